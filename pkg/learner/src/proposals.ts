/**
 * Proposal-file writer in the exchange format the planner toolkit reads:
 * one header line per problem section, one sample per line as
 * space-separated decimals, LF endings.
 *
 * Floats are written in the exact textual form the planner side re-emits
 * (shortest round-trip decimals, ".0" on integral values, no exponent
 * notation), so a parse-and-rewrite over there reproduces the file byte
 * for byte.
 */

export function formatFloat(v: number): string {
  if (!Number.isFinite(v)) throw new Error(`non-finite sample value ${v}`);
  if (Number.isInteger(v) && Math.abs(v) < 1e15) return v.toFixed(1);
  return v.toString();
}

/** Clamp into the box and zero-snap magnitudes that would need exponent
 * notation; the written file is the value of record. */
export function sanitize(v: number, lo: number, hi: number): number {
  const clamped = Math.min(Math.max(v, lo), hi);
  return Math.abs(clamped) < 1e-4 ? 0.0 : clamped;
}

export interface ProposalSection {
  problemId: string;
  proposer: string;
  dim: number;
  samples: number[][];
}

export function proposalsToText(sections: ProposalSection[]): string {
  const lines: string[] = [];
  for (const section of sections) {
    lines.push(
      `# dim=${section.dim} problem=${section.problemId} proposer=${section.proposer}`,
    );
    for (const sample of section.samples) {
      if (sample.length !== section.dim) {
        throw new Error(
          `sample has ${sample.length} values, header says dim=${section.dim}`,
        );
      }
      lines.push(sample.map(formatFloat).join(" "));
    }
  }
  return lines.join("\n") + (lines.length ? "\n" : "");
}

export function parseProposals(text: string): ProposalSection[] {
  const sections: ProposalSection[] = [];
  let current: ProposalSection | null = null;
  const lines = text.split("\n");
  for (let i = 0; i < lines.length; i++) {
    const line = lines[i].trim();
    if (!line) continue;
    if (line.startsWith("#")) {
      const fields = new Map<string, string>();
      for (const token of line.slice(1).trim().split(/\s+/)) {
        const eq = token.indexOf("=");
        if (eq < 0) throw new Error(`line ${i + 1}: malformed header token ${token}`);
        fields.set(token.slice(0, eq), token.slice(eq + 1));
      }
      for (const key of ["dim", "problem", "proposer"]) {
        if (!fields.has(key)) throw new Error(`line ${i + 1}: header missing ${key}=`);
      }
      current = {
        problemId: fields.get("problem")!,
        proposer: fields.get("proposer")!,
        dim: parseInt(fields.get("dim")!, 10),
        samples: [],
      };
      sections.push(current);
      continue;
    }
    if (!current) throw new Error(`line ${i + 1}: sample before any header`);
    const parts = line.split(/\s+/);
    if (parts.length !== current.dim) {
      throw new Error(`line ${i + 1}: expected ${current.dim} values, got ${parts.length}`);
    }
    const values = parts.map(Number);
    if (values.some((v) => Number.isNaN(v))) {
      throw new Error(`line ${i + 1}: non-numeric value`);
    }
    current.samples.push(values);
  }
  return sections;
}
