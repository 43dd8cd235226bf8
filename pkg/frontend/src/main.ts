import { ApiClient } from "./api.js";
import { MatchController, PlayOutcome } from "./controller.js";
import { LeaderboardView } from "./leaderboard.js";
import { PlayScreen } from "./playScreen.js";
import { expiredView, resultView, ResultViewModel } from "./resultView.js";
import { TUTORIAL_STEPS } from "./tutorial.js";
import type { Facet, MatchInfo, RegistrationForm } from "./types.js";

const api = new ApiClient("");
const board = new LeaderboardView(api);

let nickname: string | null = window.localStorage.getItem("wl.nickname");
let screen: PlayScreen | null = null;
let controller: MatchController | null = null;
let timerHandle: number | null = null;

const $ = <T extends HTMLElement = HTMLElement>(id: string): T =>
  document.getElementById(id) as T;

const SECTIONS = ["register", "home", "play", "result", "board", "tutorial"];

function show(section: string): void {
  for (const name of SECTIONS) {
    $(`section-${name}`).hidden = name !== section;
  }
}

function setText(id: string, text: string): void {
  $(id).textContent = text;
}

// ------------------------------------------------------------- registration

function registrationForm(): RegistrationForm {
  return {
    nickname: $<HTMLInputElement>("reg-nickname").value.trim(),
    age: Number($<HTMLInputElement>("reg-age").value),
    education: $<HTMLSelectElement>("reg-education").value,
    profession: $<HTMLInputElement>("reg-profession").value.trim(),
    mother_tongue: $<HTMLInputElement>("reg-tongue").value.trim(),
    reading_habits: $<HTMLSelectElement>("reg-reading").value,
    language_pref: $<HTMLSelectElement>("reg-language").value,
  };
}

async function register(): Promise<void> {
  setText("reg-error", "");
  try {
    const { nickname: confirmed } = await api.registerUser(registrationForm());
    nickname = confirmed;
    window.localStorage.setItem("wl.nickname", confirmed);
    enterHome();
  } catch (err) {
    setText("reg-error", err instanceof Error ? err.message : String(err));
  }
}

function enterHome(): void {
  setText("home-nickname", nickname ?? "");
  show("home");
}

// -------------------------------------------------------------------- play

function stopTimer(): void {
  if (timerHandle !== null) {
    window.clearInterval(timerHandle);
    timerHandle = null;
  }
}

function stashLadder(): void {
  if (!screen) return;
  window.localStorage.setItem(
    "wl.pendingLadder",
    JSON.stringify({
      matchId: screen.matchId,
      above: screen.aboveRungs,
      below: screen.belowRungs,
    }),
  );
}

function renderLadder(): void {
  if (!screen) return;
  const list = $("ladder");
  list.innerHTML = "";
  const rows: { word: string; kind: string }[] = [];
  // most generic on top: the above list is stored nearest-to-prompt first
  [...screen.aboveRungs].reverse().forEach((word) =>
    rows.push({ word, kind: "above" }),
  );
  rows.push({ word: screen.prompt, kind: "prompt" });
  screen.belowRungs.forEach((word) => rows.push({ word, kind: "below" }));
  for (const row of rows) {
    const item = document.createElement("li");
    item.className = `rung rung-${row.kind}`;
    item.textContent = row.kind === "prompt" ? row.word.toUpperCase() : row.word;
    list.appendChild(item);
  }
  stashLadder();
}

function setInputsEnabled(enabled: boolean): void {
  for (const id of ["above-input", "below-input", "btn-add-above", "btn-add-below", "btn-submit"]) {
    ($(id) as HTMLInputElement | HTMLButtonElement).disabled = !enabled;
  }
}

function updateCountdown(): void {
  if (!screen) return;
  setText("countdown", `${Math.ceil(screen.remaining)} s`);
  if (!screen.submittable) {
    setInputsEnabled(false);
  }
}

function handleOutcome(outcome: PlayOutcome): void {
  stopTimer();
  if (outcome.kind === "retry") {
    // keep the board editable state visible; offer a retry without data loss
    setText("play-error", `network trouble (${outcome.message}); your ladder is kept, try again`);
    $("btn-submit").removeAttribute("disabled");
    return;
  }
  window.localStorage.removeItem("wl.pendingLadder");
  let view: ResultViewModel;
  if (outcome.kind === "result" && screen) {
    view = resultView(outcome.result, screen.aboveRungs, screen.belowRungs);
  } else if (outcome.kind === "expired") {
    view = expiredView();
  } else {
    setText("play-error", outcome.kind === "error" ? outcome.message : "");
    return;
  }
  setText("result-stars", view.starGlyphs);
  setText("result-score", view.scoreText);
  setText("result-validated", view.validatedText);
  const flagList = $("result-flags");
  flagList.innerHTML = "";
  for (const rung of view.rungs) {
    const item = document.createElement("li");
    item.textContent = `${rung.valid ? "✓" : "✗"} ${rung.word}`;
    item.className = rung.valid ? "valid" : "invalid";
    flagList.appendChild(item);
  }
  setText("result-expired", view.expired ? "The countdown ran out before the server accepted a submission." : "");
  show("result");
}

async function startMatch(mode: string): Promise<void> {
  if (!nickname) return;
  setText("home-error", "");
  const participants = [nickname];
  if (mode === "challenge") {
    const rival = $<HTMLInputElement>("challenge-rival").value.trim();
    if (!rival) {
      setText("home-error", "challenge mode needs a rival nickname");
      return;
    }
    participants.push(rival);
  }
  let match: MatchInfo;
  try {
    match = await api.startMatch(
      participants,
      mode,
      $<HTMLSelectElement>("reg-language").value || "EN",
    );
  } catch (err) {
    setText("home-error", err instanceof Error ? err.message : String(err));
    return;
  }
  screen = new PlayScreen(match);
  controller = new MatchController(api, screen, nickname, { onOutcome: handleOutcome });
  setText("prompt-word", match.prompt.toUpperCase());
  setText("play-error", "");
  setInputsEnabled(true);
  renderLadder();
  updateCountdown();
  show("play");
  stopTimer();
  timerHandle = window.setInterval(() => {
    updateCountdown();
    void controller?.handleTick();
  }, 250);
}

function addRung(side: "above" | "below"): void {
  if (!screen) return;
  const input = $<HTMLInputElement>(`${side}-input`);
  const outcome = side === "above" ? screen.addAbove(input.value) : screen.addBelow(input.value);
  if (!outcome.ok) {
    setText(
      "play-error",
      outcome.reason === "duplicate"
        ? `"${input.value.trim()}" is already on the ladder`
        : "type a word first",
    );
    return;
  }
  setText("play-error", "");
  input.value = "";
  input.focus();
  renderLadder();
}

// ------------------------------------------------------------- leaderboard

const EDUCATION_OPTIONS = ["", "primary", "middle", "high_school", "bachelor", "master", "doctorate", "other"];
const READING_OPTIONS = ["", "never", "monthly", "weekly", "daily"];
const AGE_BANDS = ["", "0-9", "10-19", "20-29", "30-39", "40-49", "50-59", "60-69", "70-79", "80-89"];

function facetControls(): void {
  const container = $("facet-controls");
  const dropdown = (facet: Facet, label: string, options: string[]): HTMLElement => {
    const wrap = document.createElement("label");
    wrap.textContent = label + " ";
    const select = document.createElement("select");
    for (const option of options) {
      const element = document.createElement("option");
      element.value = option;
      element.textContent = option || "any";
      select.appendChild(element);
    }
    select.addEventListener("change", () => {
      void board.setFacet(facet, select.value || null).then(renderBoard);
    });
    wrap.appendChild(select);
    return wrap;
  };
  const textbox = (facet: Facet, label: string): HTMLElement => {
    const wrap = document.createElement("label");
    wrap.textContent = label + " ";
    const input = document.createElement("input");
    input.placeholder = "any";
    input.addEventListener("change", () => {
      void board.setFacet(facet, input.value.trim() || null).then(renderBoard);
    });
    wrap.appendChild(input);
    return wrap;
  };
  container.append(
    dropdown("age_band", "age band", AGE_BANDS),
    dropdown("education", "education", EDUCATION_OPTIONS),
    textbox("profession", "profession"),
    textbox("mother_tongue", "mother tongue"),
    dropdown("reading_habits", "reading habits", READING_OPTIONS),
  );
}

function renderBoard(): void {
  const table = $("board-rows");
  const status = board.statusMessage();
  setText("board-status", status ?? "");
  table.innerHTML = "";
  for (const [rank, row] of board.rows.entries()) {
    const tr = document.createElement("tr");
    for (const cell of [
      String(rank + 1),
      row.nickname,
      row.score.toFixed(1),
      String(row.games),
      row.age_band,
      row.education,
    ]) {
      const td = document.createElement("td");
      td.textContent = cell;
      tr.appendChild(td);
    }
    table.appendChild(tr);
  }
}

// ---------------------------------------------------------------- tutorial

function renderTutorial(): void {
  const container = $("tutorial-steps");
  container.innerHTML = "";
  TUTORIAL_STEPS.forEach((step, index) => {
    const item = document.createElement("li");
    const title = document.createElement("strong");
    title.textContent = `${index + 1}. ${step.title} — `;
    item.appendChild(title);
    item.appendChild(document.createTextNode(step.body));
    container.appendChild(item);
  });
}

// ------------------------------------------------------------------ wiring

export function boot(): void {
  facetControls();
  renderTutorial();
  $("btn-register").addEventListener("click", () => void register());
  $("btn-play-individual").addEventListener("click", () => void startMatch("individual"));
  $("btn-play-challenge").addEventListener("click", () => void startMatch("challenge"));
  $("btn-add-above").addEventListener("click", () => addRung("above"));
  $("btn-add-below").addEventListener("click", () => addRung("below"));
  $<HTMLInputElement>("above-input").addEventListener("keydown", (event) => {
    if (event.key === "Enter") addRung("above");
  });
  $<HTMLInputElement>("below-input").addEventListener("keydown", (event) => {
    if (event.key === "Enter") addRung("below");
  });
  $("btn-submit").addEventListener("click", () => void controller?.submit());
  $("btn-board").addEventListener("click", () => {
    void board.refresh().then(() => {
      renderBoard();
      show("board");
    });
  });
  $("btn-tutorial").addEventListener("click", () => show("tutorial"));
  for (const id of ["btn-home-from-result", "btn-home-from-board", "btn-home-from-tutorial"]) {
    $(id).addEventListener("click", () => enterHome());
  }
  $("btn-logout").addEventListener("click", () => {
    window.localStorage.removeItem("wl.nickname");
    nickname = null;
    show("register");
  });
  if (nickname) {
    enterHome();
  } else {
    show("register");
  }
}

if (typeof document !== "undefined" && document.readyState !== "loading") {
  boot();
} else if (typeof document !== "undefined") {
  document.addEventListener("DOMContentLoaded", boot);
}
