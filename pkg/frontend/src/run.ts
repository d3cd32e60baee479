/**
 * Argument handling for the plot command, kept separate from the
 * process entry point so tests can drive it in process.
 *
 * Exit codes: 0 rendered, 1 bad input data (schema mismatch, no data,
 * unreadable file), 2 usage error.
 */

import { parseArgs } from "util";

import { defaultSpec, render } from "./figure";
import { DataError, FIGURE_KINDS, FigureKind, SchemaError } from "./schema";

const USAGE =
  "usage: cfisac-plot plot <theta|npm|conformance> <csv> -o <image.svg>";

export function run(argv: string[]): number {
  let positionals: string[];
  let output: string | undefined;
  try {
    const parsed = parseArgs({
      args: argv,
      options: { output: { type: "string", short: "o" } },
      allowPositionals: true,
    });
    positionals = parsed.positionals;
    output = parsed.values.output;
  } catch (err) {
    console.error(`error: ${(err as Error).message}`);
    console.error(USAGE);
    return 2;
  }
  if (positionals.length !== 3 || positionals[0] !== "plot" ||
      output === undefined) {
    console.error(USAGE);
    return 2;
  }
  const kind = positionals[1];
  if (!FIGURE_KINDS.includes(kind as FigureKind)) {
    console.error(`error: unknown figure kind "${kind}" ` +
      `(choose ${FIGURE_KINDS.join(", ")})`);
    console.error(USAGE);
    return 2;
  }
  const spec = defaultSpec(kind as FigureKind, positionals[2], output);
  try {
    render(spec);
  } catch (err) {
    if (err instanceof SchemaError || err instanceof DataError) {
      console.error(`error: ${err.message}`);
      return 1;
    }
    if ((err as NodeJS.ErrnoException).code === "ENOENT") {
      console.error(`error: cannot read ${spec.csvPath}`);
      return 1;
    }
    throw err;
  }
  console.log(`wrote ${spec.outPath}`);
  return 0;
}
