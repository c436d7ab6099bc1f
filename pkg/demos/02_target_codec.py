"""Show the bracketed target format and its salvage-anything parser.

Keyphrase lists travel through the model as plain text: ``[k1, k2, k3]``.
Serialization sanitizes structural characters out of phrases; parsing
accepts whatever a beam search produced, including truncated or noisy
output, and always returns a clean list.
"""

from kpgen.codec import parse_generated, sanitize_phrase, serialize_keyphrases

CLEAN = ["path exposure", "sensor network", "sequential deployment"]

NOISY_OUTPUTS = [
    "[path exposure, sensor network]",
    "[path exposure, sensor network",          # truncated beam: no closing bracket
    "path exposure, sensor network]",          # missing opening bracket
    "]junk[path exposure, Path Exposure, ,]",  # stray brackets, dupes, empties
    "no brackets at all, just commas",
    "",
]


def main():
    target = serialize_keyphrases(CLEAN)
    print(f"serialize {CLEAN}\n  -> {target!r}")
    print(f"round-trip -> {parse_generated(target)}")

    print("\nsanitization keeps phrases unambiguous inside the format:")
    for phrase in ["graph [sub]coloring", "a, b, and c", "  spaced   out  "]:
        print(f"  {phrase!r} -> {sanitize_phrase(phrase)!r}")

    print("\nparsing is total: any string yields a valid list")
    for raw in NOISY_OUTPUTS:
        print(f"  {raw!r}\n    -> {parse_generated(raw)}")


if __name__ == "__main__":
    main()
