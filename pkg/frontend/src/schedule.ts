/** Debounced, latest-wins prediction scheduling. Rapid slider movement
 * collapses to one request per quiet period, and a response only reaches
 * the display if no newer request has been issued since. */

export interface Scheduler<TRequest, TResult> {
  schedule(request: TRequest): void;
  /** Bypass the debounce (wizard finish); still latest-wins deduped. */
  issueNow(request: TRequest): void;
  cancel(): void;
}

export function createScheduler<TRequest, TResult>(
  issue: (request: TRequest) => Promise<TResult>,
  onResult: (result: TResult) => void,
  onError: (error: unknown) => void,
  delayMs = 200,
): Scheduler<TRequest, TResult> {
  let timer: ReturnType<typeof setTimeout> | null = null;
  let sequence = 0;

  function fire(request: TRequest): void {
    const ticket = ++sequence;
    issue(request).then(
      (result) => {
        if (ticket === sequence) onResult(result);
      },
      (error) => {
        if (ticket === sequence) onError(error);
      },
    );
  }

  return {
    schedule(request) {
      if (timer !== null) clearTimeout(timer);
      timer = setTimeout(() => {
        timer = null;
        fire(request);
      }, delayMs);
    },
    issueNow(request) {
      if (timer !== null) {
        clearTimeout(timer);
        timer = null;
      }
      fire(request);
    },
    cancel() {
      if (timer !== null) {
        clearTimeout(timer);
        timer = null;
      }
      sequence++;
    },
  };
}
