"""A small seeded campaign, the same thing `snailhom fuzz` runs."""

from snailhom.cli import fuzz_instance
from snailhom.genrand import GenConfig
from snailhom.ring import GF

cfg = GenConfig(seed=7, ring=GF(5))
checks = ("snail", "exactness", "longseq", "compare")
bad = 0
for i in range(10):
    res = fuzz_instance(cfg, i, checks)
    fails = {k: v for k, v in res.items() if v}
    bad += bool(fails)
    print(i, "ok" if not fails else fails)
print(f"{10 - bad}/10 pass")
