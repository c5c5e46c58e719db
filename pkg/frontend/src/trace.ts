/**
 * The trace panel: every event the case has seen, in order, using the
 * server's own one-line descriptions.
 */
import { TraceEntry } from "./wire";

export function renderTrace(root: HTMLElement, entries: TraceEntry[]): void {
  const list = document.createElement("ol");
  list.className = "trace";
  list.start = 0;
  for (const entry of entries) {
    const item = document.createElement("li");
    item.className = `trace-entry trace-${entry.kind}`;
    item.textContent = entry.text;
    if (entry.userId !== undefined) {
      const who = document.createElement("span");
      who.className = "trace-user";
      who.textContent = ` (${entry.userId}${entry.at ? `, ${entry.at}` : ""})`;
      item.append(who);
    }
    list.append(item);
  }
  root.replaceChildren(list);
}
