/** Strict parsers for the solver's CSV schemas. */

export class CsvError extends Error {
  constructor(file: string, line: number, message: string) {
    super(`${file}:${line}: ${message}`);
    this.name = "CsvError";
  }
}

/** Cell value: number, or null for an allowed-empty cell. */
export type Row = (number | null)[];

function parseTable(
  text: string,
  file: string,
  header: string[],
  emptyOk: Set<number>,
): Row[] {
  const lines = text.split(/\r?\n/);
  while (lines.length > 0 && lines[lines.length - 1] === "") lines.pop();
  if (lines.length === 0) throw new CsvError(file, 1, "file is empty");
  const got = lines[0].split(",").map((s) => s.trim());
  if (got.join(",") !== header.join(",")) {
    throw new CsvError(file, 1, `expected header "${header.join(",")}", got "${lines[0]}"`);
  }
  if (lines.length === 1) throw new CsvError(file, 2, "no data rows");
  const rows: Row[] = [];
  for (let i = 1; i < lines.length; i++) {
    const cells = lines[i].split(",");
    if (cells.length !== header.length) {
      throw new CsvError(file, i + 1, `expected ${header.length} columns, got ${cells.length}`);
    }
    const row: Row = [];
    for (let j = 0; j < cells.length; j++) {
      const cell = cells[j].trim();
      if (cell === "") {
        if (!emptyOk.has(j)) {
          throw new CsvError(file, i + 1, `column "${header[j]}" must not be empty`);
        }
        row.push(null);
        continue;
      }
      const v = Number(cell);
      if (!Number.isFinite(v)) {
        throw new CsvError(file, i + 1, `column "${header[j]}" is not a number: "${cell}"`);
      }
      row.push(v);
    }
    rows.push(row);
  }
  return rows;
}

export interface ConvergenceRow {
  N: number;
  l2Error: number | null;
  l2Order: number | null;
  linfError: number | null;
  linfOrder: number | null;
}

export function parseConvergence(text: string, file: string): ConvergenceRow[] {
  const rows = parseTable(
    text, file,
    ["N", "l2_error", "l2_order", "linf_error", "linf_order"],
    new Set([1, 2, 3, 4]), // orders empty on the first row; errors empty on failed rows
  );
  return rows.map((r) => ({
    N: r[0] as number,
    l2Error: r[1],
    l2Order: r[2],
    linfError: r[3],
    linfOrder: r[4],
  }));
}

export interface DiagnosticsSeries {
  t: number[];
  mass: number[];
  energy: number[];
  l2: number[];
  linf: number[];
}

export function parseDiagnostics(text: string, file: string): DiagnosticsSeries {
  const rows = parseTable(text, file, ["t", "mass", "energy", "l2", "linf"], new Set());
  return {
    t: rows.map((r) => r[0] as number),
    mass: rows.map((r) => r[1] as number),
    energy: rows.map((r) => r[2] as number),
    l2: rows.map((r) => r[3] as number),
    linf: rows.map((r) => r[4] as number),
  };
}

export interface SnapshotSeries {
  x: number[];
  u: number[];
}

export function parseSnapshot(text: string, file: string): SnapshotSeries {
  const rows = parseTable(text, file, ["x", "u"], new Set());
  return { x: rows.map((r) => r[0] as number), u: rows.map((r) => r[1] as number) };
}
