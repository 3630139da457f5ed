// Session client: server-authoritative state with delta streaming.
// Transports are injected so tests can drive the client from recorded
// wire traffic; browser implementations live at the bottom.

import {
  applyDelta,
  isNextRevision,
  type Mutation,
  type Snapshot,
  type StreamMessage,
} from './protocol';

export interface HttpTransport {
  postJson(path: string, body: unknown): Promise<unknown>;
  getJson(path: string): Promise<unknown>;
}

export interface StreamHandle {
  close(): void;
}

export type StreamFactory = (
  path: string,
  onMessage: (message: StreamMessage) => void,
) => StreamHandle;

interface CreateResponse {
  session: string;
  snapshot: Snapshot;
}

export class SessionClient {
  private state: Snapshot | null = null;
  private sessionId: string | null = null;
  private stream: StreamHandle | null = null;
  /** how often the client had to fall back to a full snapshot fetch */
  resyncCount = 0;
  onChange: (snapshot: Snapshot) => void = () => {};

  constructor(
    private readonly http: HttpTransport,
    private readonly openStream?: StreamFactory,
  ) {}

  get snapshot(): Snapshot {
    if (!this.state) throw new Error('no session created yet');
    return this.state;
  }

  get id(): string {
    if (!this.sessionId) throw new Error('no session created yet');
    return this.sessionId;
  }

  async create(graph: unknown, config?: Record<string, unknown>): Promise<Snapshot> {
    const body: Record<string, unknown> = { graph };
    if (config) body.config = config;
    const created = (await this.http.postJson('/sessions', body)) as CreateResponse;
    this.sessionId = created.session;
    this.state = created.snapshot;
    if (this.openStream) {
      this.stream = this.openStream(`/sessions/${created.session}/stream`, (m) =>
        this.handleMessage(m),
      );
    }
    this.onChange(this.state);
    return created.snapshot;
  }

  /**
   * Post a mutation. The response is the same message the stream carries;
   * it goes through the ordinary message path, so whichever copy arrives
   * first wins and the other is dropped as stale.
   */
  async sendMutation(mutation: Mutation): Promise<void> {
    const message = (await this.http.postJson(
      `/sessions/${this.id}/mutations`,
      mutation,
    )) as StreamMessage;
    this.handleMessage(message);
  }

  handleMessage(message: StreamMessage): void {
    if (!this.state) return;
    if (message.revision <= this.state.revision) return; // already seen
    if (!isNextRevision(this.state, message)) {
      void this.resync(); // gap: a delta went missing, refetch everything
      return;
    }
    this.state = applyDelta(this.state, message);
    this.onChange(this.state);
  }

  async resync(): Promise<Snapshot> {
    this.resyncCount += 1;
    const snap = (await this.http.getJson(`/sessions/${this.id}/snapshot`)) as Snapshot;
    if (!this.state || snap.revision >= this.state.revision) {
      this.state = snap;
      this.onChange(snap);
    }
    return snap;
  }

  close(): void {
    this.stream?.close();
    this.stream = null;
  }
}

// ----- Browser transports -----

export function fetchTransport(baseUrl: string): HttpTransport {
  const url = (path: string) => new URL(path, baseUrl).toString();
  return {
    async postJson(path, body) {
      const resp = await fetch(url(path), {
        method: 'POST',
        headers: { 'content-type': 'application/json' },
        body: JSON.stringify(body),
      });
      if (!resp.ok) throw new Error(`POST ${path} failed: ${resp.status}`);
      return resp.json();
    },
    async getJson(path) {
      const resp = await fetch(url(path));
      if (!resp.ok) throw new Error(`GET ${path} failed: ${resp.status}`);
      return resp.json();
    },
  };
}

export function webSocketStream(baseUrl: string): StreamFactory {
  return (path, onMessage) => {
    const wsUrl = new URL(path, baseUrl);
    wsUrl.protocol = wsUrl.protocol === 'https:' ? 'wss:' : 'ws:';
    const socket = new WebSocket(wsUrl.toString());
    socket.onmessage = (event) => {
      onMessage(JSON.parse(event.data as string) as StreamMessage);
    };
    return { close: () => socket.close() };
  };
}
