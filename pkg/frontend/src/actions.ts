/**
 * Action buttons.  An enabled act is a plain one-click button; anything
 * not enabled is painted as a warning and must go through the
 * confirmation dialog before the service will commit it.
 */
import { ActionView } from "./wire";

/** Background per status: blue for go, red for blocked, amber for unknown. */
export const STATUS_COLORS: Record<ActionView["status"], string> = {
  Enabled: "#2563eb",
  Disabled: "#dc2626",
  Undetermined: "#d97706",
};

export function actionButton(action: ActionView, onRun: (act: string) => void): HTMLButtonElement {
  const button = document.createElement("button");
  button.type = "button";
  button.className = `act-button status-${action.status.toLowerCase()}`;
  button.dataset.act = action.act;
  button.dataset.status = action.status;
  button.textContent = action.act;
  button.style.backgroundColor = STATUS_COLORS[action.status];
  button.title = action.reasons.map(([clause, value]) => `${clause} = ${value}`).join("\n");
  button.disabled = !action.permitted;
  button.addEventListener("click", () => onRun(action.act));
  return button;
}
