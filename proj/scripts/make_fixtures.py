#!/usr/bin/env python3
"""Regenerates the synthetic fixtures under data/.

The numbers are invented: they only need to look like batting records
(bowlers average little, top-order batsmen a lot, matchups vary) and to
exercise every fallback tier. Output is deterministic.
"""
import json
import math
import random
from pathlib import Path

ROOT = Path(__file__).resolve().parent.parent / "data"

SKILL = {  # (low, high) base average per role, ODI scale
    "bat": (26.0, 52.0),
    "wk": (20.0, 40.0),
    "ar_fast": (14.0, 34.0),
    "ar_spin": (14.0, 34.0),
    "fast": (3.0, 14.0),
    "spin": (3.0, 14.0),
}

DEFAULTS = {
    "bat": {"average": 25, "highest": 80},
    "wk": {"average": 20, "highest": 70},
    "ar_fast": {"average": 15, "highest": 55},
    "ar_spin": {"average": 15, "highest": 55},
    "fast": {"average": 6, "highest": 25},
    "spin": {"average": 6, "highest": 25},
}

CWC_TEAMS = [
    ("ALD", "Aldermoor"), ("BRK", "Brackenfield"), ("CAS", "Castlereach"),
    ("DUN", "Dunmore Vale"), ("ESK", "Eskerby"), ("FEN", "Fenwick"),
    ("GLN", "Glenharrow"), ("HAL", "Halcombe"), ("IRV", "Irvingdale"),
    ("JUN", "Juniper Coast"), ("KEL", "Kelthorne"), ("LOR", "Lorrimer"),
]

IPL_TEAMS = [
    ("AMB", "Ambergate Tigers"), ("BLU", "Bluewater Kings"), ("COR", "Coral Strikers"),
    ("DEL", "Delta Royals"), ("EMB", "Emberlight Chargers"), ("FAL", "Falconridge"),
    ("GRA", "Granite Warriors"), ("HAR", "Harbour Knights"),
]

CWC_ROLES = ["fast"] * 4 + ["spin"] * 4 + ["ar_fast"] * 2 + ["ar_spin"] * 2 + ["bat"] * 4 + ["wk"] * 2
IPL_DOMESTIC = ["fast"] * 3 + ["spin"] * 2 + ["ar_fast"] * 2 + ["ar_spin"] * 2 + ["bat"] * 2 + ["wk"]
IPL_OVERSEAS = ["bat", "bat", "fast", "ar_fast", "spin", "wk"]


def fmt(x):
    return f"{x:.2f}".rstrip("0").rstrip(".")


def stat_line(rng, base, scale):
    average = round(max(0.5, base * rng.uniform(0.55, 1.45)) * scale, 2)
    innings = rng.randint(1, 24)
    if innings == 1:
        highest = math.ceil(average)
    else:
        highest = max(math.ceil(average), round(average * rng.uniform(1.7, 3.4)))
    return average, highest, innings


def build(name, teams, role_lists, scale, seed):
    rng = random.Random(seed)
    out_dir = ROOT / name
    out_dir.mkdir(parents=True, exist_ok=True)
    team_json = []
    rows = []
    for code, team_name in teams:
        strength = rng.uniform(0.75, 1.25)
        players = []
        for idx, (role, overseas) in enumerate(role_lists):
            pid = f"{code}{idx + 1:02d}"
            players.append({"id": pid, "name": f"{team_name} {role} {idx + 1}", "role": role,
                            "overseas": overseas})
        team_json.append({"id": code, "name": team_name, "players": players})
        # Two debutants and one player with no records at all per team.
        debutants = set(rng.sample(range(len(players)), 3))
        unknown = min(debutants)
        for idx, p in enumerate(players):
            lo, hi = SKILL[p["role"]]
            base = rng.uniform(lo, hi) * strength
            if idx == unknown:
                continue
            if idx in debutants:
                tier = rng.choice(["domestic", "first_class", "reserve", "u19"])
                a, h, n = stat_line(rng, base, scale)
                rows.append((p["id"], "*", a, h, n, tier))
                continue
            a, h, n = stat_line(rng, base, scale)
            rows.append((p["id"], "*", a, h, max(n, 10), "international"))
            for opp, _ in teams:
                if opp == code or rng.random() < 0.15:
                    continue
                a, h, n = stat_line(rng, base, scale)
                rows.append((p["id"], opp, a, h, n, "international"))
    (out_dir / "teams.json").write_text(json.dumps(team_json, indent=2) + "\n")
    with open(out_dir / "stats.csv", "w") as f:
        f.write("player_id,opponent_id,average,highest,innings,tier\n")
        for pid, opp, a, h, n, tier in rows:
            f.write(f"{pid},{opp},{fmt(a)},{h},{n},{tier}\n")
    defaults = {k: {"average": round(v["average"] * scale, 2), "highest": round(v["highest"] * scale)}
                for k, v in DEFAULTS.items()}
    (out_dir / "defaults.json").write_text(json.dumps(defaults, indent=2) + "\n")


def main():
    build("cwc12", CWC_TEAMS, [(r, False) for r in CWC_ROLES], 1.0, 2023)
    build("ipl8", IPL_TEAMS,
          [(r, False) for r in IPL_DOMESTIC] + [(r, True) for r in IPL_OVERSEAS], 0.7, 2020)


if __name__ == "__main__":
    main()
