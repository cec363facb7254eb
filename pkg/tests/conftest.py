from hypothesis import HealthCheck, settings

# Deterministic suite: property tests replay a fixed example sequence, and
# per-example deadlines add timing noise without value for scalar numerics.
settings.register_profile(
    "gaussdp",
    deadline=None,
    derandomize=True,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("gaussdp")
