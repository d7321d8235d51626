import time

SESSION_T0 = time.monotonic()


def session_elapsed() -> float:
    return time.monotonic() - SESSION_T0
