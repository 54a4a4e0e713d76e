from config.settings import Settings, get_settings, settings
from config.logging_config import configure_logging, get_logger

__all__ = ["Settings", "settings", "get_settings", "configure_logging", "get_logger"]
