from hypothesis import HealthCheck, settings

# deterministic property testing: same examples on every run
settings.register_profile(
    "ci",
    derandomize=True,
    max_examples=60,
    suppress_health_check=[HealthCheck.too_slow],
    deadline=None,
)
settings.load_profile("ci")
