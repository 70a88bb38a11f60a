/** Local countdown display. Interpolates between server responses for
 * smoothness only; phase transitions happen exclusively on server say-so. */

export class CountdownDisplay {
  private remaining: number | null = null;
  private syncedAt = 0;
  private handle: ReturnType<typeof setInterval> | null = null;

  constructor(private element: HTMLElement) {}

  sync(remainingS: number | null): void {
    this.remaining = remainingS;
    this.syncedAt = Date.now();
    this.render();
    if (this.handle === null && remainingS !== null) {
      this.handle = setInterval(() => this.render(), 250);
    }
  }

  stop(): void {
    if (this.handle !== null) {
      clearInterval(this.handle);
      this.handle = null;
    }
  }

  private render(): void {
    if (this.remaining === null) {
      this.element.textContent = "";
      return;
    }
    const elapsed = (Date.now() - this.syncedAt) / 1000;
    const left = Math.max(0, this.remaining - elapsed);
    const minutes = Math.floor(left / 60);
    const seconds = Math.floor(left % 60);
    this.element.textContent = `${minutes}:${String(seconds).padStart(2, "0")}`;
  }
}
