/**
 * The full act flow through the app: an enabled act runs on one click,
 * a blocked one opens the confirmation dialog from the service's 409
 * report.  Cancelling sends nothing further — the trace stays exactly
 * as it was — while confirming re-submits with `confirm` and surfaces
 * the resulting violation in the banner.
 */
import { beforeEach, describe, expect, it } from "vitest";

import { CaseApp } from "../src/app";
import { CaseClient } from "../src/client";
import { FakeHttp, flush } from "./helpers";
import casesList from "./fixtures/cases-list.json";
import fourEyes202 from "./fixtures/four-eyes-202.json";
import confirm409 from "./fixtures/quittance-confirm-409.json";
import deniedView from "./fixtures/quittance-denied-view.json";
import submittedView from "./fixtures/quittance-submitted-view.json";
import quittanceTrace from "./fixtures/quittance-trace.json";
import quittanceView from "./fixtures/quittance-view.json";

const CASE_ID = "b865ea6235c14226a646999e86ee5bda";

interface ActBody {
  act: string;
  confirm?: boolean;
  recipient?: string;
}

function makeApp() {
  const fake = new FakeHttp()
    .reply("GET", "/cases?sort=createdAt", 200, casesList)
    .reply("GET", `/cases/${CASE_ID}`, 200, quittanceView)
    .reply("GET", `/cases/${CASE_ID}/trace`, 200, quittanceTrace)
    .on("POST", `/cases/${CASE_ID}/acts`, (request) => {
      const body = request.body as ActBody;
      if (body.act === "submit-application") return { status: 200, body: submittedView };
      if (body.act === "grant-quittance") return { status: 202, body: fourEyes202 };
      if (body.act === "deny-quittance") {
        return body.confirm
          ? { status: 200, body: deniedView }
          : { status: 409, body: confirm409 };
      }
      return { status: 422, body: { code: "invalid-act", message: `unknown act ${body.act}` } };
    });
  const root = document.createElement("div");
  document.body.append(root);
  const app = new CaseApp(new CaseClient("", "test-token", fake.fetch), root);
  return { fake, root, app };
}

function button(root: HTMLElement, act: string): HTMLButtonElement {
  const found = root.querySelector<HTMLButtonElement>(`[data-act="${act}"]`);
  if (found === null) throw new Error(`no button for ${act}`);
  return found;
}

beforeEach(() => {
  document.body.replaceChildren();
});

describe("an enabled act", () => {
  it("runs on a single click, with no dialog involved", async () => {
    const { fake, root, app } = makeApp();
    await app.openCase(CASE_ID);

    const submit = button(root, "submit-application");
    expect(submit.className).toContain("status-enabled");
    expect(submit.style.backgroundColor).toBe("rgb(37, 99, 235)");

    root.querySelector<HTMLInputElement>(".recipient-input")!.value = "town";
    submit.click();
    await flush();

    expect(document.querySelector(".confirm-overlay")).toBeNull();
    const posts = fake.posts();
    expect(posts).toHaveLength(1);
    expect(posts[0]?.body).toEqual({
      act: "submit-application",
      recipient: "town",
    });
    expect(root.querySelector(".duty")?.textContent).toBe("process-duty: dana owes town");
  });
});

describe("a blocked act", () => {
  it("is shown red and asks before doing anything irreversible", async () => {
    const { root, app } = makeApp();
    await app.openCase(CASE_ID);

    const deny = button(root, "deny-quittance");
    expect(deny.className).toContain("status-disabled");
    expect(deny.style.backgroundColor).toBe("rgb(220, 38, 38)");

    deny.click();
    await flush();

    const dialog = document.querySelector(".confirm-dialog");
    expect(dialog).not.toBeNull();
    expect(dialog?.querySelector("h2")?.textContent).toBe("deny-quittance is Disabled");
    const reason = dialog?.querySelector(".reason");
    expect(reason?.textContent).toBe("applicant-income >= income-threshold — False");
    expect(reason?.className).toContain("reason-false");
  });

  it("sends nothing more on cancel and the trace stays as it was", async () => {
    const { fake, root, app } = makeApp();
    await app.openCase(CASE_ID);

    button(root, "deny-quittance").click();
    await flush();
    const traceBefore = root.querySelector(".trace-panel")!.innerHTML;
    const requestsBefore = fake.requests.length;

    document.querySelector<HTMLButtonElement>(".cancel-button")!.click();
    await flush();

    expect(document.querySelector(".confirm-overlay")).toBeNull();
    expect(fake.requests.length).toBe(requestsBefore);
    expect(fake.posts().filter((post) => (post.body as ActBody).confirm)).toHaveLength(0);
    expect(root.querySelector(".trace-panel")!.innerHTML).toBe(traceBefore);
  });

  it("re-submits with confirm and surfaces the violation banner", async () => {
    const { fake, root, app } = makeApp();
    await app.openCase(CASE_ID);

    button(root, "deny-quittance").click();
    await flush();
    document.querySelector<HTMLButtonElement>(".confirm-button")!.click();
    await flush();

    expect(document.querySelector(".confirm-overlay")).toBeNull();
    const denials = fake.posts().map((post) => post.body as ActBody);
    expect(denials).toEqual([
      { act: "deny-quittance" },
      { act: "deny-quittance", confirm: true },
    ]);
    const banner = root.querySelector(".violation-banner");
    expect(banner?.textContent).toBe(
      "violation: alice performed deny-quittance while it was not enabled (step 5)",
    );
  });
});

describe("other outcomes", () => {
  it("reports a four-eyes act as waiting for its second approval", async () => {
    const { root, app } = makeApp();
    await app.openCase(CASE_ID);

    button(root, "grant-quittance").click();
    await flush();

    expect(root.querySelector(".notice")?.textContent).toBe(
      "grant-quittance is waiting for a second approval (first: admin)",
    );
  });

  it("opens a case from the list", async () => {
    const { root, app } = makeApp();
    await app.showCaseList();

    const links = root.querySelectorAll<HTMLButtonElement>(".case-link");
    expect([...links].map((link) => link.dataset.caseId)).toEqual([
      "b865ea6235c14226a646999e86ee5bda",
      "1e96dfcc4f97480c821e07d63808b3d4",
    ]);
    links[0]!.click();
    await flush();

    expect(root.querySelectorAll(".slot")).toHaveLength(6);
    expect(root.querySelector(".trace-panel")?.textContent).toContain(
      "initial statement =income-threshold(1500).",
    );
  });
});
