/**
 * Minimal dense-network building blocks with hand-rolled backprop and
 * Adam. Everything is Float64 and single-threaded, so training is exactly
 * reproducible for a fixed seed.
 */

import { Rng } from "./rng.js";

export class Linear {
  readonly inDim: number;
  readonly outDim: number;
  w: Float64Array; // outDim x inDim, row-major
  b: Float64Array;
  gw: Float64Array;
  gb: Float64Array;
  private mw: Float64Array;
  private vw: Float64Array;
  private mb: Float64Array;
  private vb: Float64Array;

  constructor(inDim: number, outDim: number, rng?: Rng) {
    this.inDim = inDim;
    this.outDim = outDim;
    this.w = new Float64Array(inDim * outDim);
    this.b = new Float64Array(outDim);
    this.gw = new Float64Array(inDim * outDim);
    this.gb = new Float64Array(outDim);
    this.mw = new Float64Array(inDim * outDim);
    this.vw = new Float64Array(inDim * outDim);
    this.mb = new Float64Array(outDim);
    this.vb = new Float64Array(outDim);
    if (rng) {
      const bound = Math.sqrt(6 / (inDim + outDim));
      for (let i = 0; i < this.w.length; i++) this.w[i] = rng.uniform(-bound, bound);
    }
  }

  forward(x: Float64Array): Float64Array {
    const out = new Float64Array(this.outDim);
    for (let o = 0; o < this.outDim; o++) {
      let acc = this.b[o];
      const row = o * this.inDim;
      for (let i = 0; i < this.inDim; i++) acc += this.w[row + i] * x[i];
      out[o] = acc;
    }
    return out;
  }

  /** Accumulate parameter grads for one sample; return grad wrt input. */
  backward(x: Float64Array, gradOut: Float64Array): Float64Array {
    const gradIn = new Float64Array(this.inDim);
    for (let o = 0; o < this.outDim; o++) {
      const go = gradOut[o];
      this.gb[o] += go;
      const row = o * this.inDim;
      for (let i = 0; i < this.inDim; i++) {
        this.gw[row + i] += go * x[i];
        gradIn[i] += this.w[row + i] * go;
      }
    }
    return gradIn;
  }

  zeroGrad(): void {
    this.gw.fill(0);
    this.gb.fill(0);
  }

  adamStep(lr: number, t: number, scale: number, beta1 = 0.9, beta2 = 0.999, eps = 1e-8): void {
    const c1 = 1 - Math.pow(beta1, t);
    const c2 = 1 - Math.pow(beta2, t);
    for (let i = 0; i < this.w.length; i++) {
      const g = this.gw[i] * scale;
      this.mw[i] = beta1 * this.mw[i] + (1 - beta1) * g;
      this.vw[i] = beta2 * this.vw[i] + (1 - beta2) * g * g;
      this.w[i] -= (lr * (this.mw[i] / c1)) / (Math.sqrt(this.vw[i] / c2) + eps);
    }
    for (let i = 0; i < this.b.length; i++) {
      const g = this.gb[i] * scale;
      this.mb[i] = beta1 * this.mb[i] + (1 - beta1) * g;
      this.vb[i] = beta2 * this.vb[i] + (1 - beta2) * g * g;
      this.b[i] -= (lr * (this.mb[i] / c1)) / (Math.sqrt(this.vb[i] / c2) + eps);
    }
  }

  toJson(): { in: number; out: number; w: number[]; b: number[] } {
    return {
      in: this.inDim,
      out: this.outDim,
      w: Array.from(this.w),
      b: Array.from(this.b),
    };
  }

  static fromJson(data: { in: number; out: number; w: number[]; b: number[] }): Linear {
    const layer = new Linear(data.in, data.out);
    layer.w.set(data.w);
    layer.b.set(data.b);
    return layer;
  }
}

export function tanhForward(x: Float64Array): Float64Array {
  const out = new Float64Array(x.length);
  for (let i = 0; i < x.length; i++) out[i] = Math.tanh(x[i]);
  return out;
}

export function tanhBackward(activated: Float64Array, gradOut: Float64Array): Float64Array {
  const gradIn = new Float64Array(gradOut.length);
  for (let i = 0; i < gradOut.length; i++) {
    gradIn[i] = gradOut[i] * (1 - activated[i] * activated[i]);
  }
  return gradIn;
}
