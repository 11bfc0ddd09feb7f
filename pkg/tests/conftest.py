import csv
import math
import random

import pytest

from knotstats import diagram as dg
from knotstats import families


def _twist_dt_cache():
    cache = {}
    for n in range(1, 16):
        d = families.twist(families.TwistSpec(n))
        cache[n] = dg.extract_dt(d)
    return cache


_DT = _twist_dt_cache()


def write_synthetic_csv(path, seed=7, per_group=40, crossing_numbers=(12, 13)):
    """Rows shaped like the real dataset but with fabricated volumes.

    DT codes are genuine twist-knot codes whose length matches the
    crossings column, so determinant cross-checks succeed.
    """
    rng = random.Random(seed)
    rows = []
    for c in crossing_numbers:
        n = c - 2
        dt = " ".join(map(str, _DT[n].values))
        det = 2 * n + 1
        for alt in (True, False):
            for i in range(per_group):
                rank = det if alt else det + 2 * rng.randint(1, 40)
                vol = 1.0 + 0.35 * c + 0.5 * math.log(rank) + rng.gauss(0, 0.25)
                rows.append([f"K{c}{'a' if alt else 'n'}{i}", c, int(alt), dt,
                             f"{vol:.6f}", rank, det])
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["name", "crossings", "alternating", "dt",
                         "volume", "kfh_rank", "determinant"])
        writer.writerows(rows)
    return path


@pytest.fixture(scope="session")
def synthetic_csv(tmp_path_factory):
    path = tmp_path_factory.mktemp("data") / "synth.csv"
    return write_synthetic_csv(path)
