/**
 * The are-you-sure dialog for acts the reasoner does not consider enabled.
 *
 * It lists every condition clause with its current truth value so the
 * user sees exactly which ones stand in the way, then either re-submits
 * the act with `confirm` set or walks away without another request.
 */
import { ExecutionReport } from "./wire";

export interface ConfirmHandlers {
  onConfirm: () => void;
  onCancel: () => void;
}

export function confirmDialog(
  act: string,
  report: ExecutionReport,
  handlers: ConfirmHandlers,
): HTMLElement {
  const overlay = document.createElement("div");
  overlay.className = "confirm-overlay";

  const dialog = document.createElement("div");
  dialog.className = "confirm-dialog";
  dialog.setAttribute("role", "dialog");

  const heading = document.createElement("h2");
  heading.textContent = `${act} is ${report.status}`;
  const note = document.createElement("p");
  note.textContent =
    "Performing it anyway will be recorded as non-compliant. These clauses are not satisfied:";

  const clauses = document.createElement("ul");
  clauses.className = "confirm-reasons";
  for (const [clause, value] of report.reasons) {
    const item = document.createElement("li");
    item.className = `reason reason-${value.toLowerCase()}`;
    item.textContent = `${clause} — ${value}`;
    clauses.append(item);
  }

  const confirm = document.createElement("button");
  confirm.type = "button";
  confirm.className = "confirm-button";
  confirm.textContent = "Perform anyway";
  confirm.addEventListener("click", () => {
    overlay.remove();
    handlers.onConfirm();
  });

  const cancel = document.createElement("button");
  cancel.type = "button";
  cancel.className = "cancel-button";
  cancel.textContent = "Cancel";
  cancel.addEventListener("click", () => {
    overlay.remove();
    handlers.onCancel();
  });

  dialog.append(heading, note, clauses, confirm, cancel);
  overlay.append(dialog);
  return overlay;
}
