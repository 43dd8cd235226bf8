// Static walkthrough shown from the help button. Wording is ours; the
// mechanics are the game's seven ground rules.

export interface TutorialStep {
  title: string;
  body: string;
}

export const TUTORIAL_STEPS: TutorialStep[] = [
  {
    title: "Build a ladder",
    body:
      "Stack words on the rungs above and below the center word. Only words " +
      "that truly fit earn points, so pick with care.",
  },
  {
    title: "Go broader above",
    body:
      "Each word above must name a wider category than the rung under it: " +
      "above APPLE you might place fruit, then food above fruit, then object.",
  },
  {
    title: "Test every step up",
    body:
      'Ask yourself: "the word below this one is a kind of ...?". apple is a ' +
      "kind of fruit, fruit is a kind of food.",
  },
  {
    title: "Go narrower below",
    body:
      "Below the center word, move toward the specific: a Granny Smith is a " +
      "particular kind of apple, so it belongs under APPLE.",
  },
  {
    title: "Longer is better",
    body:
      "Taller ladders score more points. Stretch as far up and down as the " +
      "clock allows, and challenge friends to out-climb you.",
  },
  {
    title: "Think in categories",
    body:
      "Stuck? Name the type or family the last word belongs to, or a " +
      "well-known member of it.",
  },
  {
    title: "Watch the clock",
    body:
      "A match lasts 120 seconds. When the countdown hits zero the rungs you " +
      "have placed are submitted automatically.",
  },
];
