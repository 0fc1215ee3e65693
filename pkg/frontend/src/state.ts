/** View state and the controller that keeps it mirroring the server.
 *
 * The client computes nothing itself: every field of the view state except
 * the request-in-flight flag and the transient notice is copied verbatim
 * from the last server payload.
 */

import { ApiError, CloudEntry, SessionPayload, Transport } from "./api.js";

export interface ViewState {
  sessionId: string | null;
  breadcrumb: string[];
  resources: string[];
  cloud: CloudEntry[];
  terminal: boolean;
  pending: boolean;
  notice: string | null;
}

export function initialViewState(): ViewState {
  return {
    sessionId: null,
    breadcrumb: [],
    resources: [],
    cloud: [],
    terminal: false,
    pending: false,
    notice: null,
  };
}

type Listener = (state: ViewState) => void;

export class BrowseController {
  private state: ViewState = initialViewState();
  private listeners: Listener[] = [];

  constructor(private readonly transport: Transport) {}

  get view(): ViewState {
    return { ...this.state, breadcrumb: [...this.state.breadcrumb] };
  }

  subscribe(listener: Listener): void {
    this.listeners.push(listener);
    listener(this.view);
  }

  private emit(): void {
    for (const listener of this.listeners) listener(this.view);
  }

  private apply(payload: SessionPayload): void {
    this.state = {
      sessionId: payload.session_id,
      breadcrumb: payload.breadcrumb,
      resources: payload.resources,
      cloud: payload.cloud,
      terminal: payload.terminal,
      pending: false,
      notice: null,
    };
    this.emit();
  }

  async open(collectionId: string): Promise<void> {
    this.apply(await this.transport.openSession(collectionId));
  }

  /** One server call at a time; extra clicks while pending are dropped. */
  private async guarded(call: () => Promise<SessionPayload>): Promise<void> {
    if (this.state.pending || this.state.sessionId === null) return;
    this.state = { ...this.state, pending: true, notice: null };
    this.emit();
    try {
      this.apply(await call());
    } catch (error) {
      if (error instanceof ApiError && error.status === 409) {
        this.state = {
          ...this.state,
          pending: false,
          notice: "tag no longer applicable",
        };
        this.emit();
        return;
      }
      this.state = { ...this.state, pending: false };
      this.emit();
      throw error;
    }
  }

  selectTag(tag: string): Promise<void> {
    return this.guarded(() => this.transport.select(this.state.sessionId!, tag));
  }

  back(): Promise<void> {
    return this.guarded(() => this.transport.back(this.state.sessionId!));
  }

  reset(): Promise<void> {
    return this.guarded(() => this.transport.reset(this.state.sessionId!));
  }

  /** Walk back until the breadcrumb has the requested length. */
  async backTo(index: number): Promise<void> {
    if (index < 0 || index >= this.state.breadcrumb.length) return;
    while (this.state.breadcrumb.length > index && !this.state.pending) {
      const before = this.state.breadcrumb.length;
      await this.back();
      if (this.state.breadcrumb.length >= before) break; // server refused
    }
  }
}
