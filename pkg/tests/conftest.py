import hypothesis

# exact-arithmetic cases have very uneven first-call latency (memoized
# recursions warm up), so per-example deadlines are off
hypothesis.settings.register_profile("desk", deadline=None, max_examples=60)
hypothesis.settings.load_profile("desk")
