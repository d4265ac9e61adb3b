import hypothesis

# Geometry-heavy properties can be slow on shared CI boxes; correctness of a
# property does not depend on wall-clock, so the deadline is disabled.
hypothesis.settings.register_profile(
    "clusterkit", deadline=None, max_examples=50
)
hypothesis.settings.load_profile("clusterkit")
