"""Operation counters used by tests to pin verifier work (pairings, MSM sizes).

Not thread-safe; intended for single-threaded assertions around a call.
"""

_counters = {"pairings": 0, "msm_lengths": []}


def record_pairing():
    _counters["pairings"] += 1


def record_msm(length: int):
    _counters["msm_lengths"].append(length)


def reset_counters():
    _counters["pairings"] = 0
    _counters["msm_lengths"] = []


def get_counters() -> dict:
    return {"pairings": _counters["pairings"], "msm_lengths": list(_counters["msm_lengths"])}
