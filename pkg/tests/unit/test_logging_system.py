import logging
from pathlib import Path

from kappa_nc.core.logging_system import (
    ContextLogger,
    KappaLogger,
    LogLevel,
    get_logger,
    setup_application_logging,
)
from kappa_nc.models.config import ZetaRunConfig


def test_get_logger_without_config_no_file_handler(capsys):
    logger = get_logger(name="unit.logger.no_file", config=None, level=LogLevel.INFO)
    assert not any(isinstance(h, logging.FileHandler) for h in logger.logger.handlers)
    logger.info("hello world")
    out, err = capsys.readouterr()
    # stdout is reserved for command output
    assert "hello world" not in out
    assert "hello world" in err
    assert "unit.logger.no_file" in err


def test_get_logger_with_config_creates_file(tmp_path, monkeypatch):
    monkeypatch.setattr(Path, "home", lambda: tmp_path)
    cfg = ZetaRunConfig(n=3, output_dir=tmp_path / "out")
    logger = get_logger(name="unit.logger.file", config=cfg, level=LogLevel.INFO)
    logger.info("file target test")

    log_path = tmp_path / ".kappa-nc" / "logs" / "unit.logger.file.log"
    assert log_path.exists(), f"Expected log file at {log_path}"
    assert "file target test" in log_path.read_text(encoding="utf-8")


def test_message_is_formatted_with_kwargs(capsys):
    logger = KappaLogger(name="fmt.test", level=LogLevel.DEBUG)
    logger.warning("pole at z={z}", z=2.0)
    _, err = capsys.readouterr()
    assert "WARNING - pole at z=2.0" in err


def test_message_format_fallback_on_missing_keys(capsys):
    logger = KappaLogger(name="fallback.test")
    logger.info("n={n} d={d}", n=2)
    _, err = capsys.readouterr()
    assert "Context:" in err
    assert "'n': 2" in err


def test_message_without_kwargs_is_not_formatted(capsys):
    logger = KappaLogger(name="raw.test")
    logger.error("invalid value {'type': 'missing'}")
    _, err = capsys.readouterr()
    assert "invalid value {'type': 'missing'}" in err


def test_debug_hidden_at_info_level(capsys):
    logger = KappaLogger(name="level.test", level="INFO")
    logger.debug("block sizes")
    logger.info("ranks done")
    _, err = capsys.readouterr()
    assert "block sizes" not in err
    assert "ranks done" in err


def test_exception_logs_traceback(capsys):
    logger = KappaLogger(name="exc.test")
    try:
        1 / 0
    except ZeroDivisionError:
        logger.exception("division failed at s={s}", s=1.5)

    _, err = capsys.readouterr()
    assert "division failed at s=1.5" in err
    assert "Traceback" in err
    assert "ZeroDivisionError" in err


def test_context_logger_injects_context_values(capsys):
    base = KappaLogger(name="ctx.test")
    ctx: ContextLogger = base.add_context(command="homology")
    ctx.info("{command}: top kernel dimension {dim}", dim=1)

    _, err = capsys.readouterr()
    assert "homology: top kernel dimension 1" in err


def test_context_logger_exception_keeps_context(capsys):
    ctx = KappaLogger(name="ctx.exc.test").add_context(command="specdim")
    try:
        raise RuntimeError("tail fit")
    except RuntimeError as e:
        ctx.exception("{command}: {error}", error=e)

    _, err = capsys.readouterr()
    assert "specdim: tail fit" in err
    assert "Traceback" in err


def test_setup_application_logging_verbose_sets_debug_level():
    logger = setup_application_logging(app_name="zeta", config=None, verbose=True)
    assert logger.name == "kappa_nc.zeta"
    assert logger.logger.level == LogLevel.DEBUG.value


def test_setup_application_logging_default_is_info():
    logger = setup_application_logging(app_name="star", config=None)
    assert logger.logger.level == LogLevel.INFO.value


def test_setup_resets_handlers():
    setup_application_logging(app_name="homology", config=None)
    logger = setup_application_logging(app_name="homology", config=None)
    assert len(logger.logger.handlers) == 1
