import logging

from nearly_convex.core.config import config


def setup_logging(level: str | None = None):
    logging.basicConfig(
        level=(level or config.log_level).upper(),
        format="%(asctime)s %(levelname)s [%(name)s] %(message)s"
    )


if __name__ == "__main__":
    setup_logging("INFO")
    logger = logging.getLogger(__name__)
    logger.info("Logging is set up.")
