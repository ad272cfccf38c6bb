#!/usr/bin/env python3
"""Regenerate core/src/stroke_font_data.cpp from the Hershey Simplex Roman font.

Requires the `Hershey-Fonts` package (pip install Hershey-Fonts). Output
coordinates are in font units: x from the glyph's left edge, y up from the
baseline, cap height 21.
"""
import sys

from HersheyFonts import HersheyFonts


def main(out_path):
    font = HersheyFonts()
    font.load_default_font("futural")
    rows = []
    for code in range(32, 127):
        glyph = next(iter(font.glyphs_for_text(chr(code))))
        left = glyph.left_offset
        base = glyph.base_line
        strokes = []
        for stroke in glyph.strokes:
            pts = ", ".join(f"{{{x - left}, {base - y}}}" for x, y in stroke)
            strokes.append(f"{{{pts}}}")
        rows.append(
            f"    {{{glyph.char_width}, {{{', '.join(strokes)}}}}},  // {chr(code)!r}"
        )
    with open(out_path, "w") as f:
        f.write("// Generated by tools/gen_stroke_font.py from the Hershey Simplex Roman\n")
        f.write("// font (public domain). Do not edit by hand.\n\n")
        f.write('#include "stroke_font_data.h"\n\n')
        f.write("namespace texstitch::detail {\n\n")
        f.write("const std::array<RawGlyph, 95> kSimplexGlyphs = {{\n")
        f.write("\n".join(rows))
        f.write("\n}};\n\n}  // namespace texstitch::detail\n")


if __name__ == "__main__":
    main(sys.argv[1] if len(sys.argv) > 1 else "core/src/stroke_font_data.cpp")
