/**
 * Typed HTTP client for the case service.
 *
 * All traffic goes through {@link CaseClient.request}: it attaches the
 * bearer token, validates the response against the wire schemas and turns
 * error bodies into {@link ApiError}s.  Performing an act is special-cased
 * because 200, 202 and 409 are all regular outcomes there, not failures.
 */
import {
  CaseRecord,
  CaseView,
  ConfirmationRequired,
  ErrorBody,
  ExecutionReport,
  PendingApproval,
  SlotSetting,
  TraceEntry,
} from "./wire";
import { z } from "zod";

export class ApiError extends Error {
  constructor(
    readonly status: number,
    readonly code: string,
    message: string,
    readonly diagnostics: ErrorBody["diagnostics"] = undefined,
  ) {
    super(message);
    this.name = "ApiError";
  }
}

export type ActOutcome =
  | { kind: "executed"; view: CaseView }
  | { kind: "needsConfirmation"; report: ExecutionReport }
  | { kind: "pendingApproval"; act: string; approvedBy: string };

export interface ListFilters {
  status?: string;
  client?: string;
  q?: string;
  sort?: string;
}

export interface ActRequest {
  actor?: string;
  recipient?: string;
  confirm?: boolean;
}

export class CaseClient {
  constructor(
    private readonly baseUrl: string,
    private readonly token: string,
    private readonly fetchFn: typeof fetch = (...args) => fetch(...args),
  ) {}

  private async request(method: string, path: string, body?: unknown): Promise<Response> {
    const headers: Record<string, string> = {
      Authorization: `Bearer ${this.token}`,
    };
    if (body !== undefined) {
      headers["Content-Type"] = "application/json";
    }
    return this.fetchFn(`${this.baseUrl}${path}`, {
      method,
      headers,
      body: body === undefined ? undefined : JSON.stringify(body),
    });
  }

  /** Parse a response with `schema`, or raise the service's error body. */
  private async parse<T>(response: Response, schema: z.ZodType<T>): Promise<T> {
    const payload = await response.json();
    if (!response.ok) {
      const error = ErrorBody.parse(payload);
      throw new ApiError(response.status, error.code, error.message, error.diagnostics);
    }
    return schema.parse(payload);
  }

  async listCases(filters: ListFilters = {}): Promise<CaseRecord[]> {
    const params = new URLSearchParams();
    for (const [key, value] of Object.entries(filters)) {
      if (value !== undefined) params.set(key, value);
    }
    const query = params.size > 0 ? `?${params.toString()}` : "";
    const response = await this.request("GET", `/cases${query}`);
    return this.parse(response, z.array(CaseRecord));
  }

  async createCase(clientRef: string): Promise<CaseView> {
    const response = await this.request("POST", "/cases", { clientRef });
    return this.parse(response, CaseView);
  }

  async getCase(caseId: string): Promise<CaseView> {
    const response = await this.request("GET", `/cases/${caseId}`);
    return this.parse(response, CaseView);
  }

  async setFact(caseId: string, typeName: string, value: SlotSetting): Promise<CaseView> {
    const response = await this.request("PATCH", `/cases/${caseId}/facts`, { typeName, value });
    return this.parse(response, CaseView);
  }

  async performAct(caseId: string, act: string, options: ActRequest = {}): Promise<ActOutcome> {
    const response = await this.request("POST", `/cases/${caseId}/acts`, { act, ...options });
    if (response.status === 409) {
      const body = ConfirmationRequired.safeParse(await response.clone().json());
      if (body.success) {
        return { kind: "needsConfirmation", report: body.data.report };
      }
    }
    if (response.status === 202) {
      const pending = PendingApproval.parse(await response.json());
      return { kind: "pendingApproval", act: pending.act, approvedBy: pending.approvedBy };
    }
    return { kind: "executed", view: await this.parse(response, CaseView) };
  }

  async getTrace(caseId: string): Promise<TraceEntry[]> {
    const response = await this.request("GET", `/cases/${caseId}/trace`);
    return this.parse(response, z.array(TraceEntry));
  }

  async closeCase(caseId: string): Promise<CaseView> {
    const response = await this.request("POST", `/cases/${caseId}/close`);
    return this.parse(response, CaseView);
  }
}
