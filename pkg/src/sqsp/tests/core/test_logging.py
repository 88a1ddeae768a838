# pylint: disable=missing-function-docstring, missing-class-docstring, protected-access
import os

from sqsp.core.logging import SqspLogger


class TestSqspLogger:
    def test_constructor_does_not_touch_filesystem(self, tmp_path):
        logger = SqspLogger("run.log", log_path=str(tmp_path))
        assert logger.path == os.path.join(str(tmp_path), "run.log")
        assert not os.path.exists(logger.path)

    def test_writes_levels_to_file(self, tmp_path):
        logger = SqspLogger("run.log", log_path=str(tmp_path))
        logger.debug("debug line")
        logger.info("info line")
        logger.warning("warning line")
        logger.error("error line")
        logger.close()

        with open(logger.path, "r", encoding="utf-8") as handle:
            lines = handle.read().splitlines()
        assert len(lines) == 4
        assert lines[0].endswith("DEBUG debug line")
        assert lines[1].endswith("INFO info line")
        assert lines[2].endswith("WARNING warning line")
        assert lines[3].endswith("ERROR error line")
        # ISO-8601 timestamp in front
        assert "T" in lines[0].split(" ")[0]

    def test_env_path_is_used(self, tmp_path, monkeypatch):
        monkeypatch.setenv("SQSP_LOG_PATH", str(tmp_path))
        logger = SqspLogger("env.log")
        assert logger.path == os.path.join(str(tmp_path), "env.log")

    def test_default_name_is_timestamp(self, tmp_path):
        logger = SqspLogger(log_path=str(tmp_path))
        assert logger._log_file_name.endswith(".log")

    def test_set_log_file_name(self, tmp_path):
        logger = SqspLogger("first.log", log_path=str(tmp_path))
        logger.set_log_file_name("second.log")
        logger.info("hello")
        logger.close()
        assert os.path.exists(os.path.join(str(tmp_path), "second.log"))
        assert not os.path.exists(os.path.join(str(tmp_path), "first.log"))

    def test_handler_attached_once(self, tmp_path):
        first = SqspLogger("shared.log", log_path=str(tmp_path))
        second = SqspLogger("shared.log", log_path=str(tmp_path))
        first.info("one")
        second.info("two")
        first.close()
        second.close()
        with open(os.path.join(str(tmp_path), "shared.log"), "r", encoding="utf-8") as handle:
            assert len(handle.read().splitlines()) == 2
