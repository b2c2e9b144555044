#!/usr/bin/env python3
"""Regenerates the shipped study scenarios.

Both studies use the same world: three sites far apart, each hosting three
executors (two close to the site's clients, one a little farther). With a
pool of two, a site's clients only reach their two closest executors; a pool
of three covers the whole site; larger pools add remote executors that mostly
receive probe copies.
"""

import json
import pathlib
import random

SITE_CENTERS = [(0.0, 0.0), (100.0, 0.0), (50.0, 86.6)]
EXECUTOR_OFFSETS = [(-1.0, 0.0), (1.0, 0.0), (0.0, 1.5)]
CLIENT_OFFSET = (0.0, -0.5)


def site_world(rate, k, chi, horizon, warmup, clients_per_site=20, seed=7):
    rng = random.Random(seed)
    executors = []
    for cx, cy in SITE_CENTERS:
        for ox, oy in EXECUTOR_OFFSETS:
            executors.append(
                {"id": len(executors), "speed": 1e9, "position": [cx + ox, cy + oy]}
            )
    clients = []
    for cx, cy in SITE_CENTERS:
        for _ in range(clients_per_site):
            x = cx + CLIENT_OFFSET[0] + rng.uniform(-0.3, 0.3)
            y = cy + CLIENT_OFFSET[1] + rng.uniform(-0.3, 0.3)
            clients.append(
                {
                    "id": len(clients),
                    "position": [round(x, 4), round(y, 4)],
                    "workload": {
                        "arrival": {"kind": "poisson", "rate": rate},
                        "ops": {"kind": "exponential", "mean": 1e7},
                        "input_bytes": 10000,
                        "output_bytes": 1000,
                    },
                }
            )
    return {
        "executors": executors,
        "clients": clients,
        "network": {"base_latency": 0.001, "latency_per_unit_distance": 0.0002},
        "policy": {"kind": "uncoordinated", "k": k, "chi": chi, "alpha": 0.1},
        "horizon_s": horizon,
        "warmup_s": warmup,
    }


def main():
    here = pathlib.Path(__file__).resolve().parent
    studies = {
        # Moderate load: about 40% of capacity before probing overhead.
        "chi-study.json": site_world(rate=6, k=3, chi=0.1, horizon=200, warmup=20),
        # Congested: two executors per site cannot absorb the site's demand.
        "poolsize-study.json": site_world(rate=8, k=3, chi=0.1, horizon=250, warmup=25),
    }
    for name, doc in studies.items():
        (here / name).write_text(json.dumps(doc, indent=2) + "\n")


if __name__ == "__main__":
    main()
