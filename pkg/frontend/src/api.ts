/** Types and HTTP transport for the browsing API. */

export interface CloudEntry {
  tag: string;
  count: number;
}

export interface SessionPayload {
  session_id: string;
  breadcrumb: string[];
  resources: string[];
  cloud: CloudEntry[];
  terminal: boolean;
  truncated?: boolean;
}

export interface CollectionInfo {
  collection_id: string;
  n_resources: number;
}

/** Everything the controller needs from the server. */
export interface Transport {
  listCollections(): Promise<CollectionInfo[]>;
  openSession(collectionId: string): Promise<SessionPayload>;
  select(sessionId: string, tag: string): Promise<SessionPayload>;
  back(sessionId: string): Promise<SessionPayload>;
  reset(sessionId: string): Promise<SessionPayload>;
}

export class ApiError extends Error {
  constructor(
    readonly status: number,
    readonly errorCode: string,
    message: string,
  ) {
    super(message);
  }
}

async function request<T>(url: string, init?: RequestInit): Promise<T> {
  const response = await fetch(url, {
    headers: { "content-type": "application/json" },
    ...init,
  });
  const body = await response.json().catch(() => ({}));
  if (!response.ok) {
    throw new ApiError(
      response.status,
      body.error_code ?? "http_error",
      body.message ?? `request failed with ${response.status}`,
    );
  }
  return body as T;
}

export class HttpTransport implements Transport {
  constructor(private readonly baseUrl = "") {}

  async listCollections(): Promise<CollectionInfo[]> {
    const body = await request<{ collections: CollectionInfo[] }>(
      `${this.baseUrl}/collections`,
      { method: "GET" },
    );
    return body.collections;
  }

  openSession(collectionId: string): Promise<SessionPayload> {
    return request(`${this.baseUrl}/collections/${collectionId}/sessions`, {
      method: "POST",
    });
  }

  select(sessionId: string, tag: string): Promise<SessionPayload> {
    return request(`${this.baseUrl}/sessions/${sessionId}/select`, {
      method: "POST",
      body: JSON.stringify({ tag }),
    });
  }

  back(sessionId: string): Promise<SessionPayload> {
    return request(`${this.baseUrl}/sessions/${sessionId}/back`, { method: "POST" });
  }

  reset(sessionId: string): Promise<SessionPayload> {
    return request(`${this.baseUrl}/sessions/${sessionId}/reset`, { method: "POST" });
  }
}
