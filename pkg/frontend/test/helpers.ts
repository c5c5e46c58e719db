/**
 * Test support: a recording fake for `fetch` and canned responses.
 *
 * The JSON under `fixtures/` was captured verbatim from a running
 * service with curl, so whatever passes these tests agrees with the
 * real wire format, not with a hand-written imitation of it.
 */

export interface RecordedRequest {
  method: string;
  path: string;
  headers: Record<string, string>;
  body: unknown;
}

type Handler = (request: RecordedRequest) => { status: number; body: unknown };

export class FakeHttp {
  readonly requests: RecordedRequest[] = [];
  private readonly routes = new Map<string, Handler>();

  /** Register a handler for `METHOD path` (path compared exactly). */
  on(method: string, path: string, handler: Handler): this {
    this.routes.set(`${method} ${path}`, handler);
    return this;
  }

  /** Shorthand for routes that always answer the same way. */
  reply(method: string, path: string, status: number, body: unknown): this {
    return this.on(method, path, () => ({ status, body }));
  }

  readonly fetch: typeof fetch = async (input, init) => {
    const request: RecordedRequest = {
      method: init?.method ?? "GET",
      path: String(input),
      headers: { ...((init?.headers as Record<string, string>) ?? {}) },
      body: typeof init?.body === "string" ? JSON.parse(init.body) : undefined,
    };
    this.requests.push(request);
    const handler = this.routes.get(`${request.method} ${request.path}`);
    if (handler === undefined) {
      throw new Error(`no route for ${request.method} ${request.path}`);
    }
    const { status, body } = handler(request);
    return new Response(JSON.stringify(body), {
      status,
      headers: { "Content-Type": "application/json" },
    });
  };

  posts(): RecordedRequest[] {
    return this.requests.filter((request) => request.method === "POST");
  }
}

/** Let every microtask chain started by an event handler settle. */
export async function flush(): Promise<void> {
  await new Promise((resolve) => setTimeout(resolve, 0));
  await new Promise((resolve) => setTimeout(resolve, 0));
}
