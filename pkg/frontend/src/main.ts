// App bootstrap: fetch the exported KB once, then render the filterable
// cheat sheets and the decision-tree wizard. Everything after the single
// kb.json fetch is client-side.

import { SCHEMA_VERSION, type KnowledgeBase } from "./types.js";
import { createCheatSheet } from "./table.js";
import {
  type WizardKind,
  type WizardState,
  applyAnswer,
  currentQuestion,
  decisionPath,
  goBack,
  isComplete,
  liveCandidates,
  newWizard,
  parseAnswersParam,
  serializeAnswers,
} from "./wizard.js";

const TABS = ["algorithms", "indices", "wizard"] as const;
type Tab = (typeof TABS)[number];

function banner(message: string): HTMLElement {
  const el = document.createElement("div");
  el.className = "banner";
  el.setAttribute("role", "alert");
  el.textContent = message;
  return el;
}

function buildWizard(kb: KnowledgeBase, initial: WizardState | null): HTMLElement {
  const root = document.createElement("section");
  root.className = "wizard";

  let state = initial ?? newWizard("algorithms");

  const kindBar = document.createElement("div");
  kindBar.className = "kind-bar";
  const kindButtons = new Map<WizardKind, HTMLButtonElement>();
  for (const kind of ["algorithms", "indices"] as const) {
    const button = document.createElement("button");
    button.type = "button";
    button.textContent = kind === "algorithms" ? "Pick an algorithm" : "Pick a validation index";
    button.addEventListener("click", () => {
      state = newWizard(kind);
      render();
    });
    kindButtons.set(kind, button);
    kindBar.append(button);
  }

  const questionBox = document.createElement("div");
  questionBox.className = "question";
  const pathBox = document.createElement("ol");
  pathBox.className = "path";
  const resultBox = document.createElement("div");
  resultBox.className = "results";
  const controls = document.createElement("div");
  controls.className = "controls";
  const backButton = document.createElement("button");
  backButton.type = "button";
  backButton.textContent = "Back";
  backButton.addEventListener("click", () => {
    state = goBack(state);
    render();
  });
  const restartButton = document.createElement("button");
  restartButton.type = "button";
  restartButton.textContent = "Restart";
  restartButton.addEventListener("click", () => {
    state = newWizard(state.kind);
    render();
  });
  const shareLink = document.createElement("a");
  shareLink.className = "share";
  shareLink.textContent = "Shareable link";
  controls.append(backButton, restartButton, shareLink);

  root.append(kindBar, questionBox, controls, pathBox, resultBox);

  function render() {
    for (const [kind, button] of kindButtons) {
      button.classList.toggle("active", kind === state.kind);
    }

    questionBox.replaceChildren();
    const question = currentQuestion(state);
    if (question !== null) {
      const text = document.createElement("p");
      text.textContent = question.text;
      questionBox.append(text);
      for (const choice of question.choices) {
        const button = document.createElement("button");
        button.type = "button";
        button.className = "choice";
        button.textContent = choice;
        button.addEventListener("click", () => {
          state = applyAnswer(state, choice);
          render();
        });
        questionBox.append(button);
      }
    } else {
      const done = document.createElement("p");
      done.className = "done";
      done.textContent = "All questions answered.";
      questionBox.append(done);
    }

    backButton.disabled = state.answers.length === 0;
    const serialized = serializeAnswers(state);
    shareLink.hidden = serialized.length === 0;
    shareLink.href = `?answers=${encodeURIComponent(serialized)}`;

    pathBox.replaceChildren();
    for (const step of decisionPath(state)) {
      const li = document.createElement("li");
      li.textContent = `${step.id}: ${step.label}`;
      pathBox.append(li);
    }

    resultBox.replaceChildren();
    const heading = document.createElement("h3");
    heading.textContent = isComplete(state)
      ? "Recommended"
      : `Still in the running (${state.answers.length === 0 ? "no answers yet" : "partial answers"})`;
    resultBox.append(heading);
    const result = liveCandidates(state, kb);
    const list = document.createElement("ul");
    list.className = "candidates";
    for (const name of result.candidates) {
      const li = document.createElement("li");
      li.textContent = name;
      list.append(li);
    }
    resultBox.append(list);
    if (result.warnings.length > 0) {
      const warnings = document.createElement("ul");
      warnings.className = "warnings";
      for (const warning of result.warnings) {
        const li = document.createElement("li");
        li.textContent = warning;
        warnings.append(li);
      }
      resultBox.append(warnings);
    }
  }

  render();
  return root;
}

function buildTabs(sections: Record<Tab, HTMLElement>, active: Tab): HTMLElement {
  const nav = document.createElement("nav");
  nav.className = "tabs";
  const buttons = new Map<Tab, HTMLButtonElement>();

  function show(tab: Tab) {
    for (const t of TABS) {
      sections[t].hidden = t !== tab;
      buttons.get(t)!.classList.toggle("active", t === tab);
    }
  }

  for (const tab of TABS) {
    const button = document.createElement("button");
    button.type = "button";
    button.textContent = tab.charAt(0).toUpperCase() + tab.slice(1);
    button.addEventListener("click", () => show(tab));
    buttons.set(tab, button);
    nav.append(button);
  }
  show(active);
  return nav;
}

async function boot(): Promise<void> {
  const app = document.getElementById("app");
  if (!app) return;

  let kb: KnowledgeBase;
  try {
    const response = await fetch("./kb.json");
    if (!response.ok) throw new Error(`HTTP ${response.status}`);
    kb = (await response.json()) as KnowledgeBase;
  } catch (err) {
    app.append(banner(`Could not load kb.json: ${String(err)}`));
    return;
  }
  if (kb.schema_version !== SCHEMA_VERSION) {
    app.append(
      banner(
        `Knowledge base schema_version ${kb.schema_version} is not supported ` +
          `(this build understands version ${SCHEMA_VERSION}).`,
      ),
    );
    return;
  }

  let prefill: WizardState | null = null;
  const param = new URLSearchParams(window.location.search).get("answers");
  if (param) {
    try {
      prefill = parseAnswersParam(param);
    } catch (err) {
      app.append(banner(`Ignoring answers parameter: ${String(err)}`));
    }
  }

  const sections: Record<Tab, HTMLElement> = {
    algorithms: createCheatSheet(kb, "algorithms").element,
    indices: createCheatSheet(kb, "indices").element,
    wizard: buildWizard(kb, prefill),
  };

  app.append(buildTabs(sections, prefill ? "wizard" : "algorithms"));
  for (const tab of TABS) app.append(sections[tab]);
}

void boot();
