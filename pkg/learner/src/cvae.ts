/**
 * Conditional variational autoencoder over bottleneck samples.
 *
 * The encoder maps (x, y) to the mean and log-variance of a diagonal
 * Gaussian in latent space; the decoder maps (z, y) back to sample space.
 * Training maximizes the usual evidence bound per (x, y) pair
 *
 *     -KL(q(z|x,y) || N(0,I)) + (1/L) sum_l log p(x | z_l, y)
 *
 * summed over every target of every training example, with the
 * reconstruction term realized as a unit-variance Gaussian log-likelihood
 * (squared error). At generation time only the decoder runs, fed z drawn
 * from an isotropic Gaussian.
 */

import { Linear, tanhBackward, tanhForward } from "./nn.js";
import { Rng } from "./rng.js";

export interface CvaeConfig {
  xDim: number;
  yDim: number;
  zDim: number;
  hidden: number;
  lr: number;
  epochs: number;
  batchSize: number;
  latentDraws: number;
  seed: number;
}

export const DEFAULT_CVAE: CvaeConfig = {
  xDim: 2,
  yDim: 104,
  zDim: 3,
  hidden: 512,
  lr: 1e-3,
  epochs: 120,
  batchSize: 32,
  latentDraws: 1,
  seed: 0,
};

export interface EpochStats {
  epoch: number;
  loss: number; // mean negative bound per pair
  kl: number; // mean KL term per pair
  recon: number;
}

export interface Pair {
  x: Float64Array;
  y: Float64Array;
}

export class Cvae {
  config: CvaeConfig;
  enc1: Linear;
  enc2: Linear;
  encOut: Linear; // emits [mu, logvar]
  dec1: Linear;
  dec2: Linear;
  decOut: Linear;

  constructor(config: CvaeConfig, rng?: Rng) {
    this.config = config;
    const { xDim, yDim, zDim, hidden } = config;
    this.enc1 = new Linear(xDim + yDim, hidden, rng);
    this.enc2 = new Linear(hidden, hidden, rng);
    this.encOut = new Linear(hidden, 2 * zDim, rng);
    this.dec1 = new Linear(zDim + yDim, hidden, rng);
    this.dec2 = new Linear(hidden, hidden, rng);
    this.decOut = new Linear(hidden, xDim, rng);
  }

  private layers(): Linear[] {
    return [this.enc1, this.enc2, this.encOut, this.dec1, this.dec2, this.decOut];
  }

  encode(x: Float64Array, y: Float64Array): { mu: Float64Array; logvar: Float64Array } {
    const { zDim } = this.config;
    const input = concat(x, y);
    const h1 = tanhForward(this.enc1.forward(input));
    const h2 = tanhForward(this.enc2.forward(h1));
    const out = this.encOut.forward(h2);
    return { mu: out.slice(0, zDim), logvar: out.slice(zDim) };
  }

  decode(z: Float64Array, y: Float64Array): Float64Array {
    const input = concat(z, y);
    const h1 = tanhForward(this.dec1.forward(input));
    const h2 = tanhForward(this.dec2.forward(h1));
    return this.decOut.forward(h2);
  }

  /**
   * One training pair: forward both halves, accumulate gradients, and
   * return the loss pieces. KL is analytic; the reconstruction term
   * averages over latentDraws reparameterized samples.
   */
  private accumulate(pair: Pair, rng: Rng): { loss: number; kl: number; recon: number } {
    const { zDim, latentDraws } = this.config;
    const encIn = concat(pair.x, pair.y);
    const e1 = this.enc1.forward(encIn);
    const a1 = tanhForward(e1);
    const e2 = this.enc2.forward(a1);
    const a2 = tanhForward(e2);
    const encOut = this.encOut.forward(a2);
    const mu = encOut.slice(0, zDim);
    const logvar = encOut.slice(zDim);

    let kl = 0;
    for (let i = 0; i < zDim; i++) {
      kl += 0.5 * (mu[i] * mu[i] + Math.exp(logvar[i]) - logvar[i] - 1);
    }

    const gradEncOut = new Float64Array(2 * zDim);
    for (let i = 0; i < zDim; i++) {
      gradEncOut[i] = mu[i]; // d KL / d mu
      gradEncOut[zDim + i] = 0.5 * (Math.exp(logvar[i]) - 1); // d KL / d logvar
    }

    let recon = 0;
    for (let draw = 0; draw < latentDraws; draw++) {
      const eps = new Float64Array(zDim);
      const z = new Float64Array(zDim);
      for (let i = 0; i < zDim; i++) {
        eps[i] = rng.gauss();
        z[i] = mu[i] + Math.exp(0.5 * logvar[i]) * eps[i];
      }
      const decIn = concat(z, pair.y);
      const d1 = this.dec1.forward(decIn);
      const b1 = tanhForward(d1);
      const d2 = this.dec2.forward(b1);
      const b2 = tanhForward(d2);
      const xhat = this.decOut.forward(b2);

      const gradXhat = new Float64Array(xhat.length);
      const w = 1 / latentDraws;
      for (let i = 0; i < xhat.length; i++) {
        const diff = xhat[i] - pair.x[i];
        recon += 0.5 * w * diff * diff;
        gradXhat[i] = w * diff;
      }
      const gB2 = this.decOut.backward(b2, gradXhat);
      const gD2 = tanhBackward(b2, gB2);
      const gB1 = this.dec2.backward(b1, gD2);
      const gD1 = tanhBackward(b1, gB1);
      const gDecIn = this.dec1.backward(decIn, gD1);
      for (let i = 0; i < zDim; i++) {
        const dz = gDecIn[i];
        gradEncOut[i] += dz;
        gradEncOut[zDim + i] += dz * eps[i] * 0.5 * Math.exp(0.5 * logvar[i]);
      }
    }

    const gA2 = this.encOut.backward(a2, gradEncOut);
    const gE2 = tanhBackward(a2, gA2);
    const gA1 = this.enc2.backward(a1, gE2);
    const gE1 = tanhBackward(a1, gA1);
    this.enc1.backward(encIn, gE1);

    return { loss: kl + recon, kl, recon };
  }

  train(pairs: Pair[], onEpoch?: (stats: EpochStats) => void): EpochStats[] {
    if (pairs.length === 0) throw new Error("empty training set");
    const { epochs, batchSize, lr, seed } = this.config;
    const rng = new Rng(seed, "cvae-train");
    const order = pairs.map((_, i) => i);
    const history: EpochStats[] = [];
    let step = 0;
    for (let epoch = 0; epoch < epochs; epoch++) {
      rng.shuffle(order);
      let lossSum = 0;
      let klSum = 0;
      let reconSum = 0;
      for (let at = 0; at < order.length; at += batchSize) {
        const batch = order.slice(at, at + batchSize);
        for (const layer of this.layers()) layer.zeroGrad();
        for (const idx of batch) {
          const pieces = this.accumulate(pairs[idx], rng);
          if (!Number.isFinite(pieces.loss)) {
            throw new Error(`training diverged at epoch ${epoch} (non-finite loss)`);
          }
          if (pieces.kl < 0) {
            throw new Error(`negative KL term at epoch ${epoch}: ${pieces.kl}`);
          }
          lossSum += pieces.loss;
          klSum += pieces.kl;
          reconSum += pieces.recon;
        }
        step += 1;
        for (const layer of this.layers()) layer.adamStep(lr, step, 1 / batch.length);
      }
      const stats = {
        epoch,
        loss: lossSum / pairs.length,
        kl: klSum / pairs.length,
        recon: reconSum / pairs.length,
      };
      history.push(stats);
      onEpoch?.(stats);
    }
    return history;
  }

  /** Decoder-only generation: n outputs for z ~ N(0, I). */
  sample(y: Float64Array, n: number, seed: number): Float64Array[] {
    const rng = new Rng(seed, "cvae-sample");
    const out: Float64Array[] = [];
    for (let k = 0; k < n; k++) {
      const z = new Float64Array(this.config.zDim);
      for (let i = 0; i < z.length; i++) z[i] = rng.gauss();
      out.push(this.decode(z, y));
    }
    return out;
  }

  toJson(): object {
    return {
      format: "cvae-checkpoint-v1",
      config: this.config,
      layers: {
        enc1: this.enc1.toJson(),
        enc2: this.enc2.toJson(),
        encOut: this.encOut.toJson(),
        dec1: this.dec1.toJson(),
        dec2: this.dec2.toJson(),
        decOut: this.decOut.toJson(),
      },
    };
  }

  static fromJson(data: any): Cvae {
    if (data.format !== "cvae-checkpoint-v1") {
      throw new Error(`unsupported checkpoint format: ${data.format}`);
    }
    const model = new Cvae(data.config as CvaeConfig);
    model.enc1 = Linear.fromJson(data.layers.enc1);
    model.enc2 = Linear.fromJson(data.layers.enc2);
    model.encOut = Linear.fromJson(data.layers.encOut);
    model.dec1 = Linear.fromJson(data.layers.dec1);
    model.dec2 = Linear.fromJson(data.layers.dec2);
    model.decOut = Linear.fromJson(data.layers.decOut);
    return model;
  }
}

function concat(a: Float64Array, b: Float64Array): Float64Array {
  const out = new Float64Array(a.length + b.length);
  out.set(a);
  out.set(b, a.length);
  return out;
}
