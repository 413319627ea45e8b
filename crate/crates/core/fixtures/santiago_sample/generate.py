"""Regenerates the synthetic santiago_sample evaluations and attractions.

Synthetic data: ten attractions placed around the historic centre of
Santiago de Cuba, each scored by three experts on every factor of
factors.csv. Scores are drawn from a seeded RNG around a per-attraction
quality level so that exactly three attractions land in the High tier.
"""
import csv
import random

rng = random.Random(20240601)

ATTRACTIONS = [
    # id, name, lon, lat, quality in [0, 1]
    ("a01", "Casa de la Trova", -75.82935, 20.02085, 0.93),
    ("a02", "Calle Enramadas", -75.83160, 20.02150, 0.90),
    ("a03", "Parque Cespedes", -75.82990, 20.02170, 0.88),
    ("a04", "Loma del Intendente", -75.82720, 20.01930, 0.55),
    ("a05", "Calle Heredia", -75.82850, 20.02040, 0.50),
    ("a06", "Plaza de Dolores", -75.82620, 20.02230, 0.45),
    ("a07", "Plaza de Marte", -75.82100, 20.02420, 0.40),
    ("a08", "Museo del Carnaval", -75.82790, 20.02010, 0.35),
    ("a09", "Balcon de Velazquez", -75.83330, 20.02120, 0.30),
    ("a10", "Padre Pico Steps", -75.83220, 20.01800, 0.20),
]
EXPERTS = ["e1", "e2", "e3"]


def clamp(v, lo, hi):
    return max(lo, min(hi, v))


def main():
    factors = list(csv.DictReader(open("factors.csv")))
    with open("attractions.csv", "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["id", "name", "lon", "lat"])
        for aid, name, lon, lat, _ in ATTRACTIONS:
            w.writerow([aid, name, f"{lon:.5f}", f"{lat:.5f}"])
    with open("evaluations.csv", "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["attraction_id", "factor_id", "expert_id", "score"])
        for aid, _, _, _, q in ATTRACTIONS:
            for f in factors:
                x, y = float(f["x"]), float(f["y"])
                for e in EXPERTS:
                    level = clamp(q + rng.uniform(-0.08, 0.08), 0.0, 1.0)
                    mode = round(x + (y - x) * level, 2)
                    lo = round(clamp(mode - rng.uniform(0.2, 0.8), x, y), 2)
                    hi = round(clamp(mode + rng.uniform(0.1, 0.5), x, y), 2)
                    w.writerow([aid, f["id"], e, f"{lo:.2f};{mode:.2f};{hi:.2f}"])


if __name__ == "__main__":
    main()
