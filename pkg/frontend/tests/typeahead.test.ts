import { describe, expect, it } from "vitest";

import { suggest } from "../src/typeahead";

const VALUES = ["pop", "post-rock", "rock", "baroque", "bebop", "Popular"];

describe("suggest", () => {
  it("returns leading values for an empty query", () => {
    expect(suggest(VALUES, "", 3)).toEqual(["pop", "post-rock", "rock"]);
  });

  it("ranks prefix matches before substring matches", () => {
    expect(suggest(VALUES, "rock")).toEqual(["rock", "post-rock"]);
  });

  it("is case-insensitive", () => {
    expect(suggest(VALUES, "POP")).toEqual(["pop", "Popular"]);
  });

  it("applies the limit after ranking", () => {
    expect(suggest(VALUES, "o", 2)).toEqual(["baroque", "bebop"]);
  });

  it("returns nothing for a miss", () => {
    expect(suggest(VALUES, "zzz")).toEqual([]);
  });
});
