from __future__ import annotations

from hypothesis import settings

settings.register_profile("repo", derandomize=True, deadline=None, print_blob=True)
settings.load_profile("repo")
