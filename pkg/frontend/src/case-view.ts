/**
 * The case screen: slots, actions, duties and violations, rendered from
 * one `CaseView` payload.  Everything shown is read off the wire format,
 * so the same code serves whichever model the case was opened under.
 */
import { actionButton } from "./actions";
import { slotEditor } from "./widgets";
import { CaseView, SlotSetting, ViolationView } from "./wire";

export interface CaseScreenHandlers {
  onSetFact: (typeName: string, value: SlotSetting) => void;
  onRunAct: (act: string, recipient?: string) => void;
}

/** Human phrasing for one violation, matching the trace's wording. */
export function violationText(violation: ViolationView): string {
  const subject = violation.subject;
  if ("duty" in subject) {
    return `duty ${subject.duty} of ${subject.holder} breached`;
  }
  return `${subject.arg} performed ${subject.type} while it was not enabled`;
}

export function renderCaseView(
  root: HTMLElement,
  view: CaseView,
  handlers: CaseScreenHandlers,
): void {
  const header = document.createElement("header");
  header.className = "case-header";
  const title = document.createElement("h1");
  title.textContent = `${view.case.clientRef} — ${view.case.caseId.slice(0, 8)}`;
  const status = document.createElement("span");
  status.className = `case-status case-${view.case.status.toLowerCase()}`;
  status.textContent = view.case.status;
  header.append(title, status);

  const sections: HTMLElement[] = [header];
  if (view.violations.length > 0) {
    sections.push(violationBanner(view.violations));
  }
  sections.push(slotsSection(view, handlers), actionsSection(view, handlers));
  if (view.duties.length > 0) {
    sections.push(dutiesSection(view));
  }

  const footer = document.createElement("footer");
  footer.className = "trace-note";
  footer.textContent = `${view.traceLength} events in the trace`;
  sections.push(footer);

  root.replaceChildren(...sections);
}

function violationBanner(violations: ViolationView[]): HTMLElement {
  const banner = document.createElement("div");
  banner.className = "violation-banner";
  banner.setAttribute("role", "alert");
  for (const violation of violations) {
    const line = document.createElement("p");
    line.className = `violation violation-${violation.kind}`;
    line.textContent = `violation: ${violationText(violation)} (step ${violation.atSeq})`;
    banner.append(line);
  }
  return banner;
}

function slotsSection(view: CaseView, handlers: CaseScreenHandlers): HTMLElement {
  const section = document.createElement("section");
  section.className = "slots";
  for (const slot of view.factSlots) {
    section.append(slotEditor(slot, handlers.onSetFact));
  }
  return section;
}

function actionsSection(view: CaseView, handlers: CaseScreenHandlers): HTMLElement {
  const section = document.createElement("section");
  section.className = "actions";

  const recipient = document.createElement("input");
  recipient.type = "text";
  recipient.name = "recipient";
  recipient.className = "recipient-input";
  recipient.placeholder = "recipient (when the act needs one)";
  section.append(recipient);

  for (const action of view.actions) {
    section.append(
      actionButton(action, (act) => {
        handlers.onRunAct(act, recipient.value === "" ? undefined : recipient.value);
      }),
    );
  }
  return section;
}

function dutiesSection(view: CaseView): HTMLElement {
  const section = document.createElement("section");
  section.className = "duties";
  for (const duty of view.duties) {
    const line = document.createElement("p");
    line.className = duty.violated ? "duty duty-violated" : "duty";
    line.textContent = `${duty.duty}: ${duty.holder} owes ${duty.claimant}`;
    if (duty.violated) {
      line.textContent += " — violated";
    }
    section.append(line);
  }
  return section;
}
