/** Facial-image capture: webcam when permitted, file upload otherwise.
 * Either path produces base64 image bytes for the face endpoint. */

export interface CaptureHooks {
  onSubmit: (imageBase64: string) => Promise<void>;
}

function stripDataUrl(dataUrl: string): string {
  const comma = dataUrl.indexOf(",");
  return comma >= 0 ? dataUrl.slice(comma + 1) : dataUrl;
}

async function tryWebcam(): Promise<MediaStream | null> {
  if (!navigator.mediaDevices?.getUserMedia) return null;
  try {
    return await navigator.mediaDevices.getUserMedia({ video: true });
  } catch {
    return null;
  }
}

function renderUploadFallback(container: HTMLElement, hooks: CaptureHooks): void {
  const wrap = document.createElement("div");
  wrap.className = "upload-fallback";
  wrap.innerHTML = `
    <p>Camera unavailable. Upload a face photo instead (PNG or JPEG).</p>
    <input type="file" accept="image/png,image/jpeg" data-role="file-input" />
    <img class="preview" data-role="preview" alt="" hidden />
    <button type="button" data-role="upload-submit" disabled>Use this photo</button>
    <small class="error" data-role="capture-error"></small>
  `;
  const input = wrap.querySelector('[data-role="file-input"]') as HTMLInputElement;
  const preview = wrap.querySelector('[data-role="preview"]') as HTMLImageElement;
  const submit = wrap.querySelector('[data-role="upload-submit"]') as HTMLButtonElement;
  const errorSlot = wrap.querySelector('[data-role="capture-error"]') as HTMLElement;
  let pending: string | null = null;

  input.addEventListener("change", () => {
    errorSlot.textContent = "";
    const file = input.files?.[0];
    if (!file) return;
    if (file.size > 10 * 1024 * 1024) {
      errorSlot.textContent = "File is larger than the 10 MB limit.";
      return;
    }
    const reader = new FileReader();
    reader.onload = () => {
      const dataUrl = String(reader.result);
      preview.src = dataUrl;
      preview.hidden = false;
      pending = stripDataUrl(dataUrl);
      submit.disabled = false;
    };
    reader.readAsDataURL(file);
  });
  submit.addEventListener("click", async () => {
    if (pending === null) return;
    submit.disabled = true;
    try {
      await hooks.onSubmit(pending);
    } catch (error) {
      submit.disabled = false;
      errorSlot.textContent = error instanceof Error ? error.message : String(error);
    }
  });
  container.appendChild(wrap);
}

function renderWebcam(container: HTMLElement, stream: MediaStream, hooks: CaptureHooks): void {
  const wrap = document.createElement("div");
  wrap.className = "webcam";
  wrap.innerHTML = `
    <video autoplay playsinline data-role="video"></video>
    <button type="button" data-role="snap">Take photo</button>
    <small class="error" data-role="capture-error"></small>
  `;
  const video = wrap.querySelector('[data-role="video"]') as HTMLVideoElement;
  const snap = wrap.querySelector('[data-role="snap"]') as HTMLButtonElement;
  const errorSlot = wrap.querySelector('[data-role="capture-error"]') as HTMLElement;
  video.srcObject = stream;
  snap.addEventListener("click", async () => {
    const canvas = document.createElement("canvas");
    canvas.width = video.videoWidth || 640;
    canvas.height = video.videoHeight || 480;
    const ctx = canvas.getContext("2d");
    if (!ctx) return;
    ctx.drawImage(video, 0, 0);
    snap.disabled = true;
    try {
      await hooks.onSubmit(stripDataUrl(canvas.toDataURL("image/png")));
      stream.getTracks().forEach((track) => track.stop());
    } catch (error) {
      snap.disabled = false;
      errorSlot.textContent = error instanceof Error ? error.message : String(error);
    }
  });
  container.appendChild(wrap);
}

export async function renderCapture(container: HTMLElement, hooks: CaptureHooks): Promise<void> {
  container.innerHTML = "";
  const section = document.createElement("section");
  section.className = "capture";
  section.innerHTML = `
    <h2>Face check</h2>
    <p>You went past the level 2 click limit. Provide a facial image for the
    second screening step.</p>
  `;
  container.appendChild(section);
  const stream = await tryWebcam();
  if (stream) {
    renderWebcam(section, stream, hooks);
  } else {
    renderUploadFallback(section, hooks);
  }
}
