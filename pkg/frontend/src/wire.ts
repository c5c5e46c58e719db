/**
 * Schemas for the case service's JSON bodies.
 *
 * Every response is parsed through these before the UI touches it, so a
 * mismatch between server and client fails loudly at the boundary instead
 * of as a broken widget three screens later.  The widget hints and action
 * statuses declared here are the whole vocabulary the UI knows: anything
 * model-specific (type names, clauses, acts) flows through as plain data.
 */
import { z } from "zod";

export const TruthValue = z.enum(["True", "False", "Unknown"]);
export type TruthValue = z.infer<typeof TruthValue>;

export const ActStatusValue = z.enum(["Enabled", "Disabled", "Undetermined"]);
export type ActStatusValue = z.infer<typeof ActStatusValue>;

export const WidgetHint = z.enum(["numberBox", "textBox", "triStateRadio"]);
export type WidgetHint = z.infer<typeof WidgetHint>;

export const CaseRecord = z.object({
  caseId: z.string(),
  clientRef: z.string(),
  modelVersionId: z.string(),
  status: z.enum(["Open", "Closed"]),
  createdAt: z.string(),
  closedAt: z.string().nullable(),
  eventCount: z.number().int(),
  snapshotRef: z.string(),
  pendingApprovals: z.record(z.string(), z.string()),
});
export type CaseRecord = z.infer<typeof CaseRecord>;

export const FactSlot = z.object({
  typeName: z.string(),
  domain: z.enum(["Int", "String"]).nullable(),
  openness: z.enum(["Open", "Closed"]),
  currentValue: z.union([z.number(), z.string(), z.boolean()]).nullable(),
  widgetHint: WidgetHint,
});
export type FactSlot = z.infer<typeof FactSlot>;

/** One condition clause paired with its current truth value. */
export const Reason = z.tuple([z.string(), TruthValue]);
export type Reason = z.infer<typeof Reason>;

export const ActionView = z.object({
  act: z.string(),
  status: ActStatusValue,
  reasons: z.array(Reason),
  permitted: z.boolean(),
});
export type ActionView = z.infer<typeof ActionView>;

export const DutyView = z.object({
  duty: z.string(),
  holder: z.string(),
  claimant: z.string(),
  createdAtSeq: z.number().int(),
  violated: z.boolean(),
});
export type DutyView = z.infer<typeof DutyView>;

/** The offender is an act instance for non-compliance, the duty itself for breaches. */
export const ViolationSubject = z.union([
  DutyView,
  z.object({
    type: z.string(),
    arg: z.union([z.number(), z.string()]).nullable(),
  }),
]);
export type ViolationSubject = z.infer<typeof ViolationSubject>;

export const ViolationView = z.object({
  kind: z.enum(["NonCompliantAct", "DutyViolation"]),
  subject: ViolationSubject,
  atSeq: z.number().int(),
});
export type ViolationView = z.infer<typeof ViolationView>;

/** Trace rows carry seq and payload except the closing marker, which has neither. */
export const TraceEntry = z.object({
  seq: z.number().int().optional(),
  kind: z.string(),
  payload: z.record(z.string(), z.unknown()).optional(),
  text: z.string(),
  userId: z.string().optional(),
  at: z.string().optional(),
});
export type TraceEntry = z.infer<typeof TraceEntry>;

export const ExecutionReport = z.object({
  executed: z.boolean(),
  status: ActStatusValue,
  reasons: z.array(Reason),
  events: z.array(TraceEntry),
});
export type ExecutionReport = z.infer<typeof ExecutionReport>;

export const CaseView = z.object({
  case: CaseRecord,
  factSlots: z.array(FactSlot),
  actions: z.array(ActionView),
  duties: z.array(DutyView),
  violations: z.array(ViolationView),
  traceLength: z.number().int(),
  report: ExecutionReport.optional(),
});
export type CaseView = z.infer<typeof CaseView>;

/** 409 body of an act that will only run when explicitly confirmed. */
export const ConfirmationRequired = z.object({
  requiresConfirmation: z.literal(true),
  report: ExecutionReport,
});
export type ConfirmationRequired = z.infer<typeof ConfirmationRequired>;

/** 202 body when a four-eyes act still needs a second user. */
export const PendingApproval = z.object({
  pendingApproval: z.literal(true),
  act: z.string(),
  approvedBy: z.string(),
});
export type PendingApproval = z.infer<typeof PendingApproval>;

export const ErrorBody = z.object({
  code: z.string(),
  message: z.string(),
  diagnostics: z.array(z.record(z.string(), z.unknown())).optional(),
});
export type ErrorBody = z.infer<typeof ErrorBody>;

/** A fact value the way the PATCH endpoint accepts it. */
export type SlotSetting = number | string | boolean | null;
