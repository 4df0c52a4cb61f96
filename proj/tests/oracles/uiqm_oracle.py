#!/usr/bin/env python3
"""Straight-line evaluation of UICM, UISM, UIConM and UCIQE components on the
64x64 integer test card, written to tests/data/metrics_golden.json.

The card and every formula are spelled out here with plain loops so the
values do not depend on the C++ implementation. Run once; the JSON is
checked in.
"""
import json
import math
import os

W = H = 64


def card():
    """RGB test card on the 8-bit grid, same definition as the C++ test."""
    img = []
    for y in range(H):
        row = []
        for x in range(W):
            r = (7 * x + 3 * y) % 256
            g = (x * y + 40) % 251
            b = ((x ^ y) * 4) % 256
            row.append((r / 255.0, g / 255.0, b / 255.0))
        img.append(row)
    return img


def mirror(i, n):
    while i < 0 or i >= n:
        i = -i - 1 if i < 0 else 2 * n - 1 - i
    return i


def uicm(img):
    rg, yb = [], []
    for row in img:
        for r, g, b in row:
            R, G, B = 255 * r, 255 * g, 255 * b
            rg.append(R - G)
            yb.append((R + G) / 2 - B)

    def trimmed(v):
        s = sorted(v)
        k = len(s)
        lo = math.ceil(0.1 * k)
        hi = math.floor(0.1 * k)
        kept = s[lo:k - hi]
        return sum(kept) / len(kept)

    mrg, myb = trimmed(rg), trimmed(yb)
    s2 = sum((v - mrg) ** 2 for v in rg) / len(rg) + sum((v - myb) ** 2 for v in yb) / len(yb)
    return -0.0268 * math.sqrt(mrg ** 2 + myb ** 2) + 0.1586 * math.sqrt(s2)


def sobel(ch):
    def p(y, x):
        return ch[mirror(y, H)][mirror(x, W)]

    out = [[0.0] * W for _ in range(H)]
    for y in range(H):
        for x in range(W):
            gx = sum(wt * (p(y + dy, x + 1) - p(y + dy, x - 1)) for dy, wt in ((-1, 1), (0, 2), (1, 1)))
            gy = sum(wt * (p(y + 1, x + dx) - p(y - 1, x + dx)) for dx, wt in ((-1, 1), (0, 2), (1, 1)))
            out[y][x] = math.sqrt(gx * gx + gy * gy)
    return out


def eme(p):
    bx, by = W // 8, H // 8
    val = 0.0
    for j in range(by):
        for i in range(bx):
            block = [p[y][x] for y in range(8 * j, 8 * j + 8) for x in range(8 * i, 8 * i + 8)]
            mx, mn = max(block), min(block)
            if mx > 0 and mn > 0:
                val += math.log(mx / mn)
    return 2.0 / (bx * by) * val


def uism(img):
    total = 0.0
    for c, lam in enumerate((0.299, 0.587, 0.114)):
        ch = [[255 * img[y][x][c] for x in range(W)] for y in range(H)]
        s = sobel(ch)
        mx = max(max(r) for r in s)
        if mx == 0:
            continue
        edge = [[s[y][x] * (255.0 / mx) * ch[y][x] for x in range(W)] for y in range(H)]
        total += lam * eme(edge)
    return total


def uiconm(img):
    bx, by = W // 8, H // 8
    val = 0.0
    for j in range(by):
        for i in range(bx):
            block = [255 * img[y][x][c] for y in range(8 * j, 8 * j + 8) for x in range(8 * i, 8 * i + 8) for c in range(3)]
            mx, mn = max(block), min(block)
            top, bot = mx - mn, mx + mn
            if top > 0 and bot > 0:
                val += (top / bot) * math.log(top / bot)
    return -val / (bx * by)


M = ((0.4124564, 0.3575761, 0.1804375),
     (0.2126729, 0.7151522, 0.0721750),
     (0.0193339, 0.1191920, 0.9503041))
WHITE = tuple(sum(r) for r in M)


def to_lab(rgb):
    lin = [v / 12.92 if v <= 0.04045 else ((v + 0.055) / 1.055) ** 2.4 for v in rgb]
    xyz = [sum(M[i][k] * lin[k] for k in range(3)) / WHITE[i] for i in range(3)]
    d = 6 / 29

    def f(t):
        return t ** (1 / 3) if t > d ** 3 else t / (3 * d * d) + 4 / 29

    fx, fy, fz = (f(t) for t in xyz)
    return 116 * fy - 16, 500 * (fx - fy), 200 * (fy - fz)


def pct(sorted_v, p):
    pos = p / 100 * (len(sorted_v) - 1)
    lo = math.floor(pos)
    hi = min(lo + 1, len(sorted_v) - 1)
    return sorted_v[lo] + (pos - lo) * (sorted_v[hi] - sorted_v[lo])


def uciqe(img):
    L, C, S = [], [], []
    for row in img:
        for px in row:
            l, a, b = to_lab(px)
            c = math.sqrt(a * a + b * b)
            L.append(l)
            C.append(c)
            S.append(c / math.sqrt(c * c + l * l) if c * c + l * l > 0 else 0.0)
    mc = sum(C) / len(C)
    sigma_c = math.sqrt(sum((c - mc) ** 2 for c in C) / len(C))
    Ls = sorted(L)
    return sigma_c / 100, (pct(Ls, 99) - pct(Ls, 1)) / 100, sum(S) / len(S)


def main():
    img = card()
    sc, cl, mu = uciqe(img)
    golden = {
        "card": "64x64: r=(7x+3y)%256, g=(xy+40)%251, b=((x^y)*4)%256, divided by 255",
        "uicm": uicm(img),
        "uism": uism(img),
        "uiconm": uiconm(img),
        "sigma_c": sc,
        "con_l": cl,
        "mu_c": mu,
    }
    path = os.path.join(os.path.dirname(__file__), "..", "data", "metrics_golden.json")
    with open(path, "w") as fh:
        json.dump(golden, fh, indent=2)
        fh.write("\n")
    print(json.dumps(golden, indent=2))


if __name__ == "__main__":
    main()
