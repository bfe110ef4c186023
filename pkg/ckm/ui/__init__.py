from .log import init_log
