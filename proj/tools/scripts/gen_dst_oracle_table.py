#!/usr/bin/env python3
"""Write the DST record table used by the codec tests, as produced by pyembroidery.

Layout (all records 3 bytes, y up in plan units):
  243*243 normal records, dy outer loop from -121, dx inner loop from -121
  243*243 jump records, same order
  end record
  colour change record
  the three jump records pyembroidery writes for a trim
"""
import io
import sys

from pyembroidery import COLOR_CHANGE, END, JUMP, STITCH, EmbPattern
from pyembroidery.DstWriter import encode_record

RANGE = range(-121, 122)


def trim_records():
    pattern = EmbPattern()
    pattern.add_stitch_absolute(STITCH, 0, 0)
    pattern.trim()
    out = io.BytesIO()
    from pyembroidery import DstWriter

    DstWriter.write(pattern, out)
    body = out.getvalue()[512:]
    # stitch record, then the trim
    return body[3:12]


def main(path):
    data = bytearray()
    for flags in (STITCH, JUMP):
        for dy in RANGE:
            for dx in RANGE:
                data += encode_record(dx, -dy, flags)  # pyembroidery works y down
    data += encode_record(0, 0, END)
    data += encode_record(0, 0, COLOR_CHANGE)
    data += trim_records()
    with open(path, "wb") as f:
        f.write(data)


if __name__ == "__main__":
    main(sys.argv[1] if len(sys.argv) > 1 else "tests/data/dst_delta_oracle.bin")
