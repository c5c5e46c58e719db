/**
 * Fact-slot editors, chosen purely by the server's widget hint.
 *
 * The mapping is the client half of the model-driven contract: a slot
 * with an Int domain arrives hinted `numberBox`, a truth-valued one
 * `triStateRadio`, everything else `textBox`.  Nothing here knows any
 * type name, so a freshly registered model renders without UI changes.
 */
import { FactSlot, SlotSetting } from "./wire";

/** Called with the wire-ready value when the user commits an edit. */
export type SlotCommit = (typeName: string, value: SlotSetting) => void;

const TRI_STATE = [
  { label: "True", value: true },
  { label: "Unknown", value: "unknown" as const },
  { label: "False", value: false },
];

export function slotEditor(slot: FactSlot, onCommit: SlotCommit): HTMLElement {
  const field = document.createElement("div");
  field.className = `slot slot-${slot.widgetHint}`;
  field.dataset.typeName = slot.typeName;

  const label = document.createElement("span");
  label.className = "slot-name";
  label.textContent = slot.typeName;
  field.append(label);

  if (slot.widgetHint === "triStateRadio") {
    field.append(triStateGroup(slot, onCommit));
  } else {
    field.append(textualInput(slot, onCommit));
  }
  return field;
}

function textualInput(slot: FactSlot, onCommit: SlotCommit): HTMLInputElement {
  const input = document.createElement("input");
  input.type = slot.widgetHint === "numberBox" ? "number" : "text";
  input.name = slot.typeName;
  if (slot.currentValue !== null) {
    input.value = String(slot.currentValue);
  }
  input.addEventListener("change", () => {
    if (input.value === "") {
      onCommit(slot.typeName, null);
    } else if (slot.widgetHint === "numberBox") {
      onCommit(slot.typeName, Number(input.value));
    } else {
      onCommit(slot.typeName, input.value);
    }
  });
  return input;
}

/** Three radios (True / Unknown / False); absent values show as Unknown. */
function triStateGroup(slot: FactSlot, onCommit: SlotCommit): HTMLElement {
  const group = document.createElement("span");
  group.className = "tri-state";
  group.setAttribute("role", "radiogroup");
  const current = slot.currentValue === null ? "unknown" : slot.currentValue;
  for (const option of TRI_STATE) {
    const label = document.createElement("label");
    const radio = document.createElement("input");
    radio.type = "radio";
    radio.name = `slot-${slot.typeName}`;
    radio.value = String(option.value);
    radio.checked = option.value === current;
    radio.addEventListener("change", () => {
      if (radio.checked) onCommit(slot.typeName, option.value);
    });
    label.append(radio, option.label);
    group.append(label);
  }
  return group;
}
