import logging

from libstarprod import logging as starprod_logging
from libstarprod.data.settings import Settings
from libstarprod.report import CheckReport, collect, run_ordered
from libstarprod.util import UnknownProduct, get_product, product_classes


def odd_witness(n):
    return {"n": n} if n % 2 else None


def test_run_ordered_keeps_input_order():
    items = list(range(50))
    assert run_ordered(lambda n: n * n, items, workers=4) == [n * n for n in items]


def test_collect_reports_the_first_witness_in_order():
    sequential = collect("odd", odd_witness, [2, 4, 7, 9])
    parallel = collect("odd", odd_witness, [2, 4, 7, 9], workers=3)
    assert sequential == parallel
    assert sequential.witnesses == [{"n": "7"}]
    assert sequential.checked == 4
    everything = collect("odd", odd_witness, [2, 7, 9], first_only=False)
    assert len(everything.witnesses) == 2


def test_report_rendering():
    report = CheckReport("sample", checked=3, details={"rank": 2})
    assert report.lines() == ["PASS sample (checked 3)", "  rank: 2"]
    report.fail(f="x", g="y")
    assert report.to_dict() == {
        "name": "sample",
        "status": "fail",
        "checked": 3,
        "details": {"rank": "2"},
        "witnesses": [{"f": "x", "g": "y"}],
    }
    assert report.lines()[-1] == "  witness: f=x, g=y"


def test_settings_overrides():
    settings = Settings().updated(degree=5, workers=None)
    assert settings.degree == 5
    assert settings.workers == 1
    assert settings.jet_order == 3


def test_product_registry():
    names = set(product_classes())
    assert {"weyl_S", "moyal_heis", "moyal_r2n", "psi_P", "quotient", "glued"} <= names
    assert get_product("weyl_S").name == "weyl_S"
    try:
        get_product("nonsense")
    except UnknownProduct as e:
        assert "weyl_S" in e.message
    else:
        raise AssertionError("unknown product accepted")


def test_logging_configuration_is_idempotent():
    assert starprod_logging.level_for(0) == logging.WARNING
    assert starprod_logging.level_for(1) == logging.INFO
    assert starprod_logging.level_for(3) == logging.DEBUG
    logger = starprod_logging.configure(logging.INFO)
    starprod_logging.configure(logging.DEBUG)
    marked = [h for h in logger.handlers if getattr(h, "starprod", False)]
    assert len(marked) == 1
    assert logger.level == logging.DEBUG
