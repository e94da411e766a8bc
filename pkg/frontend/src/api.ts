/**
 * Typed client for the screening engine's /v1 HTTP API.
 *
 * Every number shown in the UI comes from these calls; the client never
 * recomputes statistics locally. Responses are validated with zod so a
 * drifting server contract fails loudly instead of rendering garbage.
 */

import { z } from "zod";

const Envelope = <T extends z.ZodTypeAny>(result: T) =>
  z.object({
    inputs: z.record(z.unknown()),
    result,
    warnings: z.array(z.string()),
    version: z.string(),
  });

const PretestResult = z.object({
  min: z.number(),
  mean: z.number(),
  max: z.number(),
  clamped: z.boolean(),
  category: z.string(),
  prevalence_threshold: z.number().optional(),
  min_exceeds_threshold: z.boolean().optional(),
  mean_exceeds_threshold: z.boolean().optional(),
});

const ThresholdResult = z.object({
  prevalence_threshold: z.number(),
});

const PosttestResult = z.object({
  posttest: z.number(),
});

const LrResult = z.object({
  positive_lr: z.number().nullable(),
  infinite: z.boolean(),
});

const NomogramResult = z.object({
  left: z.number(),
  mid: z.number(),
  right: z.number(),
  posttest: z.number(),
  mcgee_posttest: z.number(),
  mcgee_gap: z.number(),
  axis_ticks: z.array(z.object({ p: z.number(), position: z.number() })),
});

const CategoryResult = z.object({
  category: z.string(),
  bounds: z.tuple([z.number(), z.number()]),
  updated_category: z.string().optional(),
});

const PowerClassResult = z.object({
  power_class: z.string(),
  log10_kappa: z.number(),
});

export type PretestResponse = z.infer<ReturnType<typeof Envelope<typeof PretestResult>>>;
export type ThresholdResponse = z.infer<ReturnType<typeof Envelope<typeof ThresholdResult>>>;
export type PosttestResponse = z.infer<ReturnType<typeof Envelope<typeof PosttestResult>>>;
export type LrResponse = z.infer<ReturnType<typeof Envelope<typeof LrResult>>>;
export type NomogramResponse = z.infer<ReturnType<typeof Envelope<typeof NomogramResult>>>;
export type CategoryResponse = z.infer<ReturnType<typeof Envelope<typeof CategoryResult>>>;
export type PowerClassResponse = z.infer<ReturnType<typeof Envelope<typeof PowerClassResult>>>;

export interface FindingInput {
  label: string;
  kappa: number;
}

export class ApiError extends Error {
  constructor(
    readonly status: number,
    readonly errorName: string,
    message: string,
  ) {
    super(message);
  }
}

export class ApiClient {
  constructor(
    readonly baseUrl: string,
    private readonly fetchImpl: typeof fetch = fetch,
  ) {}

  private async post(path: string, body: unknown, signal?: AbortSignal): Promise<unknown> {
    const res = await this.fetchImpl(`${this.baseUrl}${path}`, {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify(body),
      signal,
    });
    const payload: unknown = await res.json();
    if (!res.ok) {
      const p = payload as { error?: string; errors?: { field: string; message: string }[] };
      const name = p.error ?? "ValidationError";
      const detail = p.errors
        ? p.errors.map((e) => `${e.field}: ${e.message}`).join("; ")
        : name;
      throw new ApiError(res.status, name, detail);
    }
    return payload;
  }

  async health(): Promise<boolean> {
    const res = await this.fetchImpl(`${this.baseUrl}/v1/health`);
    return res.ok;
  }

  async pretest(
    findings: FindingInput[],
    opts: {
      baseline?: number | null;
      sens?: number | null;
      spec?: number | null;
    } = {},
    signal?: AbortSignal,
  ): Promise<PretestResponse> {
    const body: Record<string, unknown> = { findings };
    if (opts.baseline != null) body.baseline_prevalence = opts.baseline;
    if (opts.sens != null && opts.spec != null) {
      body.sens = opts.sens;
      body.spec = opts.spec;
    }
    return Envelope(PretestResult).parse(await this.post("/v1/pretest", body, signal));
  }

  async threshold(sens: number, spec: number, signal?: AbortSignal): Promise<ThresholdResponse> {
    return Envelope(ThresholdResult).parse(
      await this.post("/v1/threshold", { sens, spec }, signal),
    );
  }

  async lr(sens: number, spec: number, signal?: AbortSignal): Promise<LrResponse> {
    return Envelope(LrResult).parse(await this.post("/v1/lr", { sens, spec }, signal));
  }

  async posttest(pretest: number, kappa: number, signal?: AbortSignal): Promise<PosttestResponse> {
    return Envelope(PosttestResult).parse(
      await this.post("/v1/posttest", { pretest, kappa }, signal),
    );
  }

  async nomogram(pretest: number, kappa: number, signal?: AbortSignal): Promise<NomogramResponse> {
    return Envelope(NomogramResult).parse(
      await this.post("/v1/nomogram", { pretest, kappa }, signal),
    );
  }

  async category(
    p: number,
    testPositive: boolean | null = null,
    signal?: AbortSignal,
  ): Promise<CategoryResponse> {
    const body: Record<string, unknown> = { p };
    if (testPositive != null) body.test_positive = testPositive;
    return Envelope(CategoryResult).parse(await this.post("/v1/category", body, signal));
  }

  async powerClass(kappa: number, signal?: AbortSignal): Promise<PowerClassResponse> {
    return Envelope(PowerClassResult).parse(
      await this.post("/v1/power-class", { kappa }, signal),
    );
  }
}

/**
 * Latest-wins request gate: starting a new call aborts the previous
 * in-flight one, so each panel renders only its most recent answer.
 */
export class LatestWins {
  private controller: AbortController | null = null;

  async run<T>(fn: (signal: AbortSignal) => Promise<T>): Promise<T | null> {
    this.controller?.abort();
    const controller = new AbortController();
    this.controller = controller;
    try {
      return await fn(controller.signal);
    } catch (err) {
      if (controller.signal.aborted) return null;
      throw err;
    }
  }
}
