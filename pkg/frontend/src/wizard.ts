// Decision-tree wizard state. The trees are the client-side twin of the core
// engine's: each branch records the filter constraints it adds, whether the
// route is narrated in the source literature (unlabelled routes are flagged
// "(reconstructed branch)"), and the follow-up question. State is immutable
// and replayed from the answer list, so back-then-re-answer is identical to a
// fresh session by construction.

import type { Criteria, FilterResult, KnowledgeBase } from "./types.js";
import { filterAlgorithms, filterIndices } from "./filter.js";

export interface Question {
  id: string;
  text: string;
  choices: readonly string[];
}

export type WizardKind = "algorithms" | "indices";

export interface WizardState {
  kind: WizardKind;
  answers: readonly string[];
}

interface Branch {
  constraints: Criteria;
  narrated: boolean;
  node: TreeNode | null;
}

interface TreeNode {
  question: string;
  branches: Record<string, Branch>;
}

export const ALGORITHM_QUESTIONS: readonly Question[] = [
  { id: "k_known", text: "Is the number of clusters known a priori?", choices: ["yes", "no"] },
  { id: "convex", text: "Are the expected clusters convex in shape?", choices: ["yes", "no"] },
  { id: "size", text: "Is the dataset small or large?", choices: ["small", "large"] },
  { id: "noise", text: "Does the data contain noise or outliers?", choices: ["yes", "no"] },
];

export const INDEX_QUESTIONS: readonly Question[] = [
  { id: "arbitrary_shapes", text: "May clusters take arbitrary shapes?", choices: ["yes", "no"] },
  {
    id: "noise_preprocessing_ok",
    text: "Is a separate noise preprocessing step acceptable?",
    choices: ["yes", "no"],
  },
  {
    id: "compact",
    text: "Are clusters expected to be compact and well separated?",
    choices: ["yes", "no"],
  },
];

const ALGORITHM_TREE: TreeNode = {
  question: "k_known",
  branches: {
    yes: {
      constraints: { needs_k_a_priori: true },
      narrated: true,
      node: {
        question: "convex",
        branches: {
          yes: {
            constraints: { cluster_shape: "convex", taxonomy_class: "partitioning" },
            narrated: true,
            node: {
              question: "size",
              branches: {
                small: { constraints: { dataset_size: "small" }, narrated: true, node: null },
                large: { constraints: { dataset_size: "large" }, narrated: true, node: null },
              },
            },
          },
          no: {
            constraints: { cluster_shape: "arbitrary" },
            narrated: false,
            node: null,
          },
        },
      },
    },
    no: {
      constraints: { needs_k_a_priori: false },
      narrated: false,
      node: {
        question: "convex",
        branches: {
          no: {
            constraints: { cluster_shape: "arbitrary" },
            narrated: false,
            node: {
              question: "noise",
              branches: {
                yes: {
                  constraints: { handles_noise: true, taxonomy_class: "density" },
                  narrated: false,
                  node: null,
                },
                no: {
                  constraints: { taxonomy_class: "grid" },
                  narrated: false,
                  node: null,
                },
              },
            },
          },
          yes: {
            constraints: { cluster_shape: "convex" },
            narrated: false,
            node: {
              question: "noise",
              branches: {
                yes: { constraints: { handles_noise: true }, narrated: false, node: null },
                no: { constraints: {}, narrated: false, node: null },
              },
            },
          },
        },
      },
    },
  },
};

const INDEX_TREE: TreeNode = {
  question: "arbitrary_shapes",
  branches: {
    yes: {
      constraints: { arbitrary_shape_capability: "high" },
      narrated: true,
      node: {
        question: "noise_preprocessing_ok",
        branches: {
          no: {
            constraints: { handles_noise_without_preprocessing: true },
            narrated: true,
            node: null,
          },
          yes: { constraints: {}, narrated: false, node: null },
        },
      },
    },
    no: {
      constraints: {},
      narrated: false,
      node: {
        question: "compact",
        branches: {
          yes: {
            constraints: { arbitrary_shape_capability: "low" },
            narrated: false,
            node: null,
          },
          no: {
            constraints: { arbitrary_shape_capability: "medium" },
            narrated: false,
            node: null,
          },
        },
      },
    },
  },
};

export function questionsFor(kind: WizardKind): readonly Question[] {
  return kind === "algorithms" ? ALGORITHM_QUESTIONS : INDEX_QUESTIONS;
}

function treeFor(kind: WizardKind): TreeNode {
  return kind === "algorithms" ? ALGORITHM_TREE : INDEX_TREE;
}

export interface PathStep {
  id: string;
  answer: string;
  label: string;
}

interface Walk {
  path: PathStep[];
  constraints: Criteria;
  next: TreeNode | null;
}

function normalizeAnswer(kind: WizardKind, questionId: string, raw: string): string {
  const question = questionsFor(kind).find((q) => q.id === questionId);
  if (!question) throw new Error(`no question ${questionId}`);
  const value = raw.trim().toLowerCase();
  if (!question.choices.includes(value)) {
    throw new Error(`question ${questionId} takes one of ${question.choices.join("/")}, got ${raw}`);
  }
  return value;
}

function walk(state: WizardState): Walk {
  const path: PathStep[] = [];
  const constraints: Criteria = {};
  let node: TreeNode | null = treeFor(state.kind);
  let i = 0;
  while (node !== null && i < state.answers.length) {
    const qid = node.question;
    const answer = normalizeAnswer(state.kind, qid, state.answers[i]!);
    const branch: Branch | undefined = node.branches[answer];
    if (!branch) throw new Error(`question ${qid} has no branch ${answer}`);
    const label = branch.narrated ? answer : `${answer} (reconstructed branch)`;
    path.push({ id: qid, answer, label });
    Object.assign(constraints, branch.constraints);
    node = branch.node;
    i += 1;
  }
  if (i < state.answers.length) {
    throw new Error(`got ${state.answers.length} answers but the tree ends after ${i}`);
  }
  return { path, constraints, next: node };
}

export function newWizard(kind: WizardKind): WizardState {
  return { kind, answers: [] };
}

export function currentQuestion(state: WizardState): Question | null {
  const { next } = walk(state);
  if (next === null) return null;
  const question = questionsFor(state.kind).find((q) => q.id === next.question);
  return question ?? null;
}

export function applyAnswer(state: WizardState, answer: string): WizardState {
  const { next } = walk(state);
  if (next === null) throw new Error("wizard already complete");
  const normalized = normalizeAnswer(state.kind, next.question, answer);
  return { kind: state.kind, answers: [...state.answers, normalized] };
}

export function goBack(state: WizardState): WizardState {
  return { kind: state.kind, answers: state.answers.slice(0, -1) };
}

export function isComplete(state: WizardState): boolean {
  return walk(state).next === null;
}

export function decisionPath(state: WizardState): PathStep[] {
  return walk(state).path;
}

export function constraintsSoFar(state: WizardState): Criteria {
  return walk(state).constraints;
}

/** Candidates surviving the constraints accumulated so far; with no answers
 * yet this is every row, and it narrows after each step. */
export function liveCandidates(state: WizardState, kb: KnowledgeBase): FilterResult {
  const { constraints } = walk(state);
  return state.kind === "algorithms"
    ? filterAlgorithms(kb, constraints)
    : filterIndices(kb, constraints);
}

// ---------------------------------------------------------------------------
// shareable links: ?answers=k_known:yes,convex:yes,size:small

export function serializeAnswers(state: WizardState): string {
  return decisionPath(state)
    .map((step) => `${step.id}:${step.answer}`)
    .join(",");
}

export function parseAnswersParam(param: string): WizardState {
  const pairs = param
    .split(",")
    .map((part) => part.trim())
    .filter((part) => part.length > 0)
    .map((part) => {
      const sep = part.indexOf(":");
      if (sep < 0) throw new Error(`malformed answer ${part}: expected id:answer`);
      return [part.slice(0, sep).trim(), part.slice(sep + 1).trim()] as const;
    });
  if (pairs.length === 0) throw new Error("empty answers parameter");
  const firstId = pairs[0]![0];
  let kind: WizardKind;
  if (ALGORITHM_QUESTIONS.some((q) => q.id === firstId)) kind = "algorithms";
  else if (INDEX_QUESTIONS.some((q) => q.id === firstId)) kind = "indices";
  else throw new Error(`unknown question id ${firstId}`);
  const byId = new Map(pairs);
  let state = newWizard(kind);
  // replay in tree order so pair order in the link does not matter
  for (;;) {
    const question = currentQuestion(state);
    if (question === null) break;
    const raw = byId.get(question.id);
    if (raw === undefined) break;
    state = applyAnswer(state, raw);
  }
  return state;
}
