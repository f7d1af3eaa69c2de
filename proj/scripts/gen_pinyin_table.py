#!/usr/bin/env python3
# Regenerates data/pinyin.tsv from pypinyin for the GB2312 character set.
#
#   pip install pypinyin && python3 scripts/gen_pinyin_table.py > data/pinyin.tsv

import sys

from pypinyin import Style, pinyin


def gb2312_chars():
    for hi in range(0xB0, 0xF8):
        for lo in range(0xA1, 0xFF):
            try:
                ch = bytes([hi, lo]).decode("gb2312")
            except UnicodeDecodeError:
                continue
            yield ch


def main():
    out = sys.stdout
    out.write("# char<TAB>reading1,reading2,... (tone digits, 5 = neutral, v = u-umlaut)\n")
    out.write("# generated from pypinyin; first reading is the most frequent one\n")
    for ch in gb2312_chars():
        readings = pinyin(ch, style=Style.TONE3, heteronym=True,
                          neutral_tone_with_five=True, errors="ignore")
        if not readings or not readings[0]:
            continue
        syls = []
        for r in readings[0]:
            r = r.lower()
            if r and r[-1].isdigit() and r not in syls:
                syls.append(r)
        if syls:
            out.write(f"{ch}\t{','.join(syls)}\n")


if __name__ == "__main__":
    main()
