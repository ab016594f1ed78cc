/** Type-ahead over an attribute's value dictionary: case-insensitive,
 * prefix matches ranked before substring matches, ties alphabetical. */
export function suggest(values: string[], query: string, limit = 8): string[] {
  const q = query.trim().toLowerCase();
  if (q === "") return values.slice(0, limit);
  const prefix: string[] = [];
  const infix: string[] = [];
  for (const value of values) {
    const v = value.toLowerCase();
    if (v.startsWith(q)) prefix.push(value);
    else if (v.includes(q)) infix.push(value);
  }
  prefix.sort((a, b) => a.localeCompare(b));
  infix.sort((a, b) => a.localeCompare(b));
  return [...prefix, ...infix].slice(0, limit);
}
