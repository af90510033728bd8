"""Compare the compiled and pure-Python kernel backends.

Each backend runs in a fresh interpreter (the backend is fixed at import),
on the same workloads: raw sparse multiplication and shuffle products.

    python3 benchmarks/bench_kernels.py [--repeat 5]
"""
import argparse
import json
import os
import subprocess
import sys

WORKLOAD = r"""
import json, timeit
from shuffle_duality import kernels
from shuffle_duality.shuffle import gen_e, star_many, _star_numerator, cartan, divided_power, e_root, Root

def poly(width, size, seed):
    import random
    rng = random.Random(seed)
    return {tuple(rng.randint(-3, 3) for _ in range(width)): rng.randint(-9, 9) or 1 for _ in range(size)}

a, b = poly(6, 120, 1), poly(6, 120, 2)
F = star_many([gen_e(1, 0, 3), gen_e(2, 1, 3)], 3)
G = star_many([gen_e(1, -1, 3), gen_e(2, 0, 3)], 3)
H = divided_power(e_root(Root(1, 2), 0, 4), 2)
K = star_many([gen_e(3, 0, 4), gen_e(2, 1, 4)], 4)

cases = {
    "mul 120x120 terms": lambda: kernels.mul(a, b),
    "star (1,1)*(1,1) n=3": lambda: _star_numerator(F.numerator, G.numerator, cartan),
    "star (2,2,0)*(0,1,1) n=4": lambda: _star_numerator(H.numerator, K.numerator, cartan),
}
out = {"backend": kernels.BACKEND}
for name, fn in cases.items():
    fn()
    t = timeit.Timer(fn)
    n, _ = t.autorange()
    out[name] = min(t.repeat(REPEAT, n)) / n
print(json.dumps(out))
"""


def run(pure: bool, repeat: int) -> dict:
    env = dict(os.environ)
    if pure:
        env["SHUFFLE_DUALITY_PURE_PYTHON"] = "1"
    else:
        env.pop("SHUFFLE_DUALITY_PURE_PYTHON", None)
    code = WORKLOAD.replace("REPEAT", str(repeat))
    res = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    return json.loads(res.stdout)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    fast = run(False, args.repeat)
    slow = run(True, args.repeat)
    if fast["backend"] != "cython":
        print("compiled extension not available; both runs use the Python backend")
    print(f"{'workload':32s} {'python (ms)':>12s} {fast['backend'] + ' (ms)':>12s} {'speedup':>8s}")
    for key in fast:
        if key == "backend":
            continue
        p, c = slow[key] * 1e3, fast[key] * 1e3
        print(f"{key:32s} {p:12.3f} {c:12.3f} {p / c:7.2f}x")


if __name__ == "__main__":
    main()
