"""Suite runtime budget (runs last: files execute alphabetically)."""

from conftest import session_elapsed


def test_criterion_9_suite_runtime():
    elapsed = session_elapsed()
    print(f"[acceptance] criterion 9 {'PASS' if elapsed < 120 else 'FAIL'}: "
          f"suite elapsed {elapsed:.1f} s (< 120 s)")
    assert elapsed < 120.0
