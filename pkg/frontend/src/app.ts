/**
 * Wires the client to the screens: a case list to pick from, the case
 * screen itself, the trace panel underneath, and a notice line for
 * pending approvals and errors.
 *
 * Running an act always starts as a plain request.  When the service
 * answers with the confirmation handshake the dialog is raised from the
 * report it sent back; cancelling ends the exchange with no further
 * request, confirming repeats it with `confirm` set.
 */
import { ApiError, CaseClient } from "./client";
import { renderCaseView } from "./case-view";
import { confirmDialog } from "./confirm";
import { renderTrace } from "./trace";
import { CaseView, SlotSetting } from "./wire";

export class CaseApp {
  private readonly listRoot: HTMLElement;
  private readonly caseRoot: HTMLElement;
  private readonly traceRoot: HTMLElement;
  private readonly noticeRoot: HTMLElement;
  private caseId: string | null = null;

  constructor(
    private readonly client: CaseClient,
    root: HTMLElement,
  ) {
    this.listRoot = document.createElement("div");
    this.listRoot.className = "case-list";
    this.caseRoot = document.createElement("div");
    this.caseRoot.className = "case-screen";
    this.traceRoot = document.createElement("div");
    this.traceRoot.className = "trace-panel";
    this.noticeRoot = document.createElement("div");
    this.noticeRoot.className = "notice";
    root.replaceChildren(this.listRoot, this.caseRoot, this.noticeRoot, this.traceRoot);
  }

  async showCaseList(): Promise<void> {
    const records = await this.client.listCases({ sort: "createdAt" });
    const list = document.createElement("ul");
    for (const record of records) {
      const item = document.createElement("li");
      const link = document.createElement("button");
      link.type = "button";
      link.className = "case-link";
      link.dataset.caseId = record.caseId;
      link.textContent = `${record.clientRef} — ${record.status} — ${record.createdAt}`;
      link.addEventListener("click", () => void this.openCase(record.caseId));
      item.append(link);
      list.append(item);
    }
    this.listRoot.replaceChildren(list);
  }

  async openCase(caseId: string): Promise<void> {
    this.caseId = caseId;
    this.present(await this.client.getCase(caseId));
    await this.refreshTrace();
  }

  private present(view: CaseView): void {
    renderCaseView(this.caseRoot, view, {
      onSetFact: (typeName, value) => void this.setFact(typeName, value),
      onRunAct: (act, recipient) => void this.runAct(act, recipient),
    });
  }

  private async refreshTrace(): Promise<void> {
    if (this.caseId === null) return;
    renderTrace(this.traceRoot, await this.client.getTrace(this.caseId));
  }

  private notify(text: string): void {
    this.noticeRoot.textContent = text;
  }

  private async setFact(typeName: string, value: SlotSetting): Promise<void> {
    if (this.caseId === null) return;
    try {
      this.present(await this.client.setFact(this.caseId, typeName, value));
      await this.refreshTrace();
    } catch (error) {
      this.reportError(error);
    }
  }

  private async runAct(act: string, recipient?: string): Promise<void> {
    if (this.caseId === null) return;
    try {
      const outcome = await this.client.performAct(this.caseId, act, { recipient });
      if (outcome.kind === "needsConfirmation") {
        document.body.append(
          confirmDialog(act, outcome.report, {
            onConfirm: () => void this.confirmAct(act, recipient),
            onCancel: () => this.notify(""),
          }),
        );
        return;
      }
      this.settle(outcome);
    } catch (error) {
      this.reportError(error);
    }
  }

  private async confirmAct(act: string, recipient?: string): Promise<void> {
    if (this.caseId === null) return;
    try {
      const outcome = await this.client.performAct(this.caseId, act, {
        recipient,
        confirm: true,
      });
      this.settle(outcome);
    } catch (error) {
      this.reportError(error);
    }
  }

  private settle(outcome: Awaited<ReturnType<CaseClient["performAct"]>>): void {
    if (outcome.kind === "executed") {
      this.present(outcome.view);
      void this.refreshTrace();
    } else if (outcome.kind === "pendingApproval") {
      this.notify(`${outcome.act} is waiting for a second approval (first: ${outcome.approvedBy})`);
    }
  }

  private reportError(error: unknown): void {
    if (error instanceof ApiError) {
      this.notify(`${error.code}: ${error.message}`);
    } else {
      throw error;
    }
  }
}
