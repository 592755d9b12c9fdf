/**
 * Deterministic PRNG (sfc32) seeded from a 32-bit integer plus a label,
 * with Box-Muller gaussians. Single-threaded and allocation-free, so
 * training runs are reproducible bit for bit.
 */

export class Rng {
  private a: number;
  private b: number;
  private c: number;
  private d: number;
  private spare: number | null = null;

  constructor(seed: number, label = "") {
    let h = 2166136261 >>> 0;
    const feed = (x: number) => {
      h ^= x;
      h = Math.imul(h, 16777619) >>> 0;
    };
    feed(seed >>> 0);
    feed((seed / 0x100000000) >>> 0);
    for (let i = 0; i < label.length; i++) feed(label.charCodeAt(i));
    this.a = h;
    this.b = (h ^ 0x9e3779b9) >>> 0;
    this.c = (h ^ 0x85ebca6b) >>> 0;
    this.d = (h ^ 0xc2b2ae35) >>> 0;
    for (let i = 0; i < 12; i++) this.next();
  }

  /** Uniform in [0, 1). */
  next(): number {
    this.a >>>= 0;
    this.b >>>= 0;
    this.c >>>= 0;
    this.d >>>= 0;
    const t = (this.a + this.b) | 0;
    this.a = this.b ^ (this.b >>> 9);
    this.b = (this.c + (this.c << 3)) | 0;
    this.c = (this.c << 21) | (this.c >>> 11);
    this.d = (this.d + 1) | 0;
    const out = (t + this.d) | 0;
    this.c = (this.c + out) | 0;
    return (out >>> 0) / 4294967296;
  }

  uniform(lo: number, hi: number): number {
    return lo + (hi - lo) * this.next();
  }

  int(n: number): number {
    return Math.floor(this.next() * n);
  }

  gauss(): number {
    if (this.spare !== null) {
      const v = this.spare;
      this.spare = null;
      return v;
    }
    let u = 0;
    let v = 0;
    do {
      u = this.next();
    } while (u === 0);
    v = this.next();
    const r = Math.sqrt(-2 * Math.log(u));
    this.spare = r * Math.sin(2 * Math.PI * v);
    return r * Math.cos(2 * Math.PI * v);
  }

  shuffle(indices: number[]): void {
    for (let i = indices.length - 1; i > 0; i--) {
      const j = this.int(i + 1);
      const tmp = indices[i];
      indices[i] = indices[j];
      indices[j] = tmp;
    }
  }
}
