/** Typed client for the gradecast service. The whole backend surface is
 * these three endpoints; the client performs no model arithmetic. */

export interface ResponseScale {
  min: number;
  max: number;
}

export interface SchemaVariable {
  id: string;
  prompt: string;
  factor: string;
}

export interface Schema {
  scale: ResponseScale;
  variables: SchemaVariable[];
}

export type Granularity = "variable" | "factor";

export interface ModelInfo {
  id: string;
  granularity: Granularity;
  description: string;
}

/** Responses travel as zero-offset integers: 0 .. (scale.max - scale.min). */
export interface PredictRequest {
  model: string;
  responses: Record<string, number>;
}

export interface PredictResponse {
  raw: number;
  clamped: number;
  model: string;
  factor_values?: Record<string, number>;
}

export interface ValidationProblems {
  missing: string[];
  out_of_scale: string[];
}

export class ApiError extends Error {
  constructor(
    message: string,
    readonly status: number,
    readonly problems?: ValidationProblems,
  ) {
    super(message);
    this.name = "ApiError";
  }
}

function isProblems(payload: unknown): payload is ValidationProblems {
  return (
    typeof payload === "object" &&
    payload !== null &&
    Array.isArray((payload as ValidationProblems).missing) &&
    Array.isArray((payload as ValidationProblems).out_of_scale)
  );
}

export class ApiClient {
  constructor(private readonly base = "") {}

  private async request<T>(path: string, init?: RequestInit): Promise<T> {
    const response = await fetch(this.base + path, init);
    const payload: unknown = await response.json();
    if (!response.ok) {
      if (response.status === 422 && isProblems(payload)) {
        throw new ApiError("invalid responses", response.status, payload);
      }
      const detail = (payload as { detail?: string })?.detail;
      throw new ApiError(detail ?? `HTTP ${response.status}`, response.status);
    }
    return payload as T;
  }

  getSchema(): Promise<Schema> {
    return this.request<Schema>("/api/schema");
  }

  getModels(): Promise<ModelInfo[]> {
    return this.request<ModelInfo[]>("/api/models");
  }

  predict(request: PredictRequest): Promise<PredictResponse> {
    return this.request<PredictResponse>("/api/predict", {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify(request),
    });
  }
}
