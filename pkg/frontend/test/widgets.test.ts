/**
 * Slot editors are picked by widget hint alone: Int-domained slots get a
 * number box, truth-valued slots get the three-state radio group, and
 * string slots a text box.  Commits translate the DOM back into the
 * values the PATCH endpoint accepts.
 */
import { describe, expect, it, vi } from "vitest";

import { slotEditor } from "../src/widgets";
import { CaseView, FactSlot } from "../src/wire";
import journalView from "./fixtures/journal-view.json";
import quittanceView from "./fixtures/quittance-view.json";

const quittance = CaseView.parse(quittanceView);
const journal = CaseView.parse(journalView);

function slotNamed(view: { factSlots: FactSlot[] }, name: string): FactSlot {
  const slot = view.factSlots.find((candidate) => candidate.typeName === name);
  if (slot === undefined) throw new Error(`no slot ${name}`);
  return slot;
}

describe("widget mapping", () => {
  it("renders every Int slot as a number box", () => {
    const intSlots = quittance.factSlots.filter((slot) => slot.domain === "Int");
    expect(intSlots).toHaveLength(5);
    for (const slot of intSlots) {
      const editor = slotEditor(slot, () => {});
      const input = editor.querySelector("input");
      expect(input?.type).toBe("number");
    }
  });

  it("shows the committed value, or an empty box when the slot is unset", () => {
    const income = slotEditor(slotNamed(quittance, "applicant-income"), () => {});
    expect(income.querySelector("input")?.value).toBe("1200");
    const capital = slotEditor(slotNamed(quittance, "applicant-capital"), () => {});
    expect(capital.querySelector("input")?.value).toBe("");
  });

  it("renders a Bool slot as exactly three radios: True, Unknown, False", () => {
    const editor = slotEditor(slotNamed(quittance, "applicant-is-married"), () => {});
    const radios = editor.querySelectorAll<HTMLInputElement>("input[type=radio]");
    expect(radios).toHaveLength(3);
    const labels = [...editor.querySelectorAll("label")].map((label) => label.textContent);
    expect(labels).toEqual(["True", "Unknown", "False"]);
    const checked = [...radios].filter((radio) => radio.checked);
    expect(checked.map((radio) => radio.value)).toEqual(["true"]);
  });

  it("checks Unknown when a Bool has no committed value", () => {
    const editor = slotEditor(slotNamed(journal, "reviewed"), () => {});
    const checked = editor.querySelector<HTMLInputElement>("input:checked");
    expect(checked?.value).toBe("unknown");
  });

  it("renders a String slot as a text box with its value", () => {
    const editor = slotEditor(slotNamed(journal, "note"), () => {});
    const input = editor.querySelector("input");
    expect(input?.type).toBe("text");
    expect(input?.value).toBe("first pass complete");
  });
});

describe("commits", () => {
  function commitOf(slot: FactSlot) {
    const onCommit = vi.fn();
    const editor = slotEditor(slot, onCommit);
    return { editor, onCommit };
  }

  it("commits numbers from a number box, and null when cleared", () => {
    const { editor, onCommit } = commitOf(slotNamed(quittance, "applicant-income"));
    const input = editor.querySelector("input")!;
    input.value = "1800";
    input.dispatchEvent(new Event("change"));
    expect(onCommit).toHaveBeenLastCalledWith("applicant-income", 1800);
    input.value = "";
    input.dispatchEvent(new Event("change"));
    expect(onCommit).toHaveBeenLastCalledWith("applicant-income", null);
  });

  it("commits text from a text box", () => {
    const { editor, onCommit } = commitOf(slotNamed(journal, "note"));
    const input = editor.querySelector("input")!;
    input.value = "second pass";
    input.dispatchEvent(new Event("change"));
    expect(onCommit).toHaveBeenLastCalledWith("note", "second pass");
  });

  it("commits true, false, or the unknown marker from the radios", () => {
    const { editor, onCommit } = commitOf(slotNamed(journal, "reviewed"));
    const radios = editor.querySelectorAll<HTMLInputElement>("input[type=radio]");
    const choose = (radio: HTMLInputElement) => {
      radio.checked = true;
      radio.dispatchEvent(new Event("change"));
    };
    choose(radios[0]!);
    expect(onCommit).toHaveBeenLastCalledWith("reviewed", true);
    choose(radios[2]!);
    expect(onCommit).toHaveBeenLastCalledWith("reviewed", false);
    choose(radios[1]!);
    expect(onCommit).toHaveBeenLastCalledWith("reviewed", "unknown");
  });
});
