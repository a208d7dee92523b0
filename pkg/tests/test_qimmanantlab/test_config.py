# Third-party
import pytest

# First-party
import qimmanantlab.config


def test_defaults():
    assert qimmanantlab.config.get("dense_threshold") == 256
    assert qimmanantlab.config.get("ideal_span_cap") == 50_000
    assert qimmanantlab.config.get("capelli_allow_m3") is False


def test_nested_overrides():
    with qimmanantlab.config.set_values(dense_threshold=4):
        assert qimmanantlab.config.get("dense_threshold") == 4

        with qimmanantlab.config.set_values(dense_threshold=8, enable_dask=True):
            assert qimmanantlab.config.get("dense_threshold") == 8
            assert qimmanantlab.config.get("enable_dask") is True

        assert qimmanantlab.config.get("dense_threshold") == 4
        assert qimmanantlab.config.get("enable_dask") is False

    assert qimmanantlab.config.get("dense_threshold") == 256
    assert "dense_threshold" not in qimmanantlab.config.config


def test_override_is_restored_after_error():
    with pytest.raises(RuntimeError):
        with qimmanantlab.config.set_values(num_workers=3):
            raise RuntimeError
    assert qimmanantlab.config.get("num_workers") == 1


def test_unknown_key():
    with pytest.raises(KeyError, match="opt1"):
        with qimmanantlab.config.set_values(opt1=1):
            pass


def test_separate_mapping():
    overrides = {}
    with qimmanantlab.config.set_values(overrides, ideal_span_cap=10):
        assert qimmanantlab.config.get("ideal_span_cap", overrides) == 10
        assert qimmanantlab.config.get("ideal_span_cap") == 50_000
    assert overrides == {}
