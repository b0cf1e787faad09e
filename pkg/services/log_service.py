import logging
import sys

from cli.config import settings

# Configure logging; stdout is reserved for command output
logging.basicConfig(
    level=getattr(logging, settings.log_level, logging.WARNING),
    stream=sys.stderr,
    format="%(asctime)s %(levelname)s %(name)s: %(message)s",
)
logger = logging.getLogger("ordsel")
