"""Time a fixed workload under the gmpy2 and the pure-Python rational backends.

Every repeat runs in a fresh interpreter so cached tables are rebuilt; the
fallback run hides gmpy2 by poisoning its ``sys.modules`` entry before mouldlab
is imported.  The best time per task is reported.

    python3 benchmarks/bench_backend.py [--repeat N]
"""
import argparse
import json
import subprocess
import sys

WORKLOAD = r"""
import json, sys, time
if {block}:
    sys.modules["gmpy2"] = None
from mouldlab import BACKEND
from mouldlab.dimlab import ds_solve, fz_relations
from mouldlab.gari import expari, gari
from mouldlab.mould import BI, swap
from mouldlab.random_moulds import random_alternal, random_mould, seeded
from mouldlab.special import pal, pil

def tasks():
    yield "swap(pil) = pal, depth 6", lambda: swap(pil(6)) == pal(6)
    def group():
        rng = seeded(0)
        A = random_mould(rng, 4, BI, const=1)
        return gari(A, expari(random_alternal(rng, 4, BI)))
    yield "gari with expari, depth 4", group
    yield "ds_solve(7)", lambda: ds_solve(7)
    yield "fz_relations(8)", lambda: fz_relations(8)

out = {{"backend": BACKEND, "tasks": {{}}}}
for name, fn in tasks():
    t = time.perf_counter()
    fn()
    out["tasks"][name] = time.perf_counter() - t
print(json.dumps(out))
"""


def run(block: bool, repeat: int) -> dict:
    code = WORKLOAD.format(block=block)
    best: dict = {}
    for _ in range(repeat):
        res = subprocess.run([sys.executable, "-c", code], capture_output=True, text=True, check=True)
        data = json.loads(res.stdout)
        for name, t in data["tasks"].items():
            best[name] = min(t, best.get(name, t))
    return {"backend": data["backend"], "tasks": best}


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    fast, slow = run(False, args.repeat), run(True, args.repeat)
    print(f"{'task':32} {fast['backend']:>10} {slow['backend']:>10} {'ratio':>7}")
    for name, t_fast in fast["tasks"].items():
        t_slow = slow["tasks"][name]
        print(f"{name:32} {t_fast:9.3f}s {t_slow:9.3f}s {t_slow / t_fast:6.2f}x")


if __name__ == "__main__":
    main()
