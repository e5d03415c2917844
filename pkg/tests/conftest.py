def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS, _fmt
    except ImportError:
        return
    if not RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for cid in sorted(RESULTS):
        row = RESULTS[cid]
        terminalreporter.write_line("%s  [%.1f s]" % (_fmt(row), row["seconds"]))
