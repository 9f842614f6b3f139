import sys

from hypothesis import HealthCheck, settings

settings.register_profile(
    "default",
    max_examples=200,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("default")

# Derivative chains on 100-symbol inputs recurse a few frames per symbol.
sys.setrecursionlimit(max(sys.getrecursionlimit(), 20000))
