/**
 * Tiny deterministic SVG assembly helpers: fixed precision, no chart
 * library, no timestamps -- the same inputs always yield the same bytes.
 */

export function fmt(v: number): string {
  // two decimals is below half a pixel at figure scale and keeps the
  // output byte-stable across platforms
  return v.toFixed(2).replace(/^-0\.00$/, "0.00");
}

export function esc(text: string): string {
  return text
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;");
}

export function tag(name: string, attrs: Record<string, string | number>,
                    body = ""): string {
  const parts = Object.entries(attrs)
    .map(([k, v]) => `${k}="${typeof v === "number" ? fmt(v) : esc(v)}"`);
  const open = `<${name}${parts.length ? " " + parts.join(" ") : ""}`;
  return body === "" ? `${open}/>` : `${open}>${body}</${name}>`;
}

export function line(x1: number, y1: number, x2: number, y2: number,
                     attrs: Record<string, string | number>): string {
  return tag("line", { x1, y1, x2, y2, ...attrs });
}

export function text(x: number, y: number, body: string,
                     attrs: Record<string, string | number> = {}): string {
  return tag("text", { x, y, "font-family": "Helvetica, Arial, sans-serif",
                       "font-size": 12, fill: "#000", ...attrs }, esc(body));
}

export function polyline(points: Array<[number, number]>,
                         attrs: Record<string, string | number>): string {
  const pts = points.map(([x, y]) => `${fmt(x)},${fmt(y)}`).join(" ");
  return tag("polyline", { points: pts, fill: "none", ...attrs });
}

/** Vertical error bar with end caps, one path per data point. */
export function errorBar(x: number, yLow: number, yHigh: number,
                         color: string, cap = 3): string {
  const d = `M ${fmt(x)} ${fmt(yLow)} L ${fmt(x)} ${fmt(yHigh)} ` +
    `M ${fmt(x - cap)} ${fmt(yLow)} L ${fmt(x + cap)} ${fmt(yLow)} ` +
    `M ${fmt(x - cap)} ${fmt(yHigh)} L ${fmt(x + cap)} ${fmt(yHigh)}`;
  return tag("path", { class: "errbar", d, stroke: color,
                       "stroke-width": 1, fill: "none" });
}

export function document(width: number, height: number,
                         body: string[]): string {
  return [
    `<svg xmlns="http://www.w3.org/2000/svg" width="${width}" ` +
    `height="${height}" viewBox="0 0 ${width} ${height}">`,
    tag("rect", { x: 0, y: 0, width, height, fill: "#ffffff" }),
    ...body,
    "</svg>",
    "",
  ].join("\n");
}
