#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""UI module to format logging."""

__name__    = 'ckm.ui.log'
__authors__ = ["CKM Developers"]
__created__ = "2026-09-02"
__updated__ = "2026-10-12"

# dependencies
import datetime as dt
import logging

# module logger
logger = logging.getLogger(__name__)

def init_log(log_format:str='full', debug:bool=False, parallel:bool=False):
    """Function to initialize the logger for the package.

    Parameters
    ----------
    log_format : {``'full'``, ``'short'``, ``'none'``}, default=``'full'``
        Format type for output to console.
    debug : bool, default=False
        Option to enable DEBUG log level.
    parallel : bool, default=False
        Option to only display warnings and errors when running code in parallel.

    Returns
    -------
    main_logger : :class:`logging.Logger`
        Root logger of the package.
    """

    # get logger
    main_logger = logging.getLogger('ckm')

    # if logger instance does not exist
    if not main_logger.hasHandlers():
        main_logger.setLevel(logging.DEBUG if debug else (logging.WARNING if parallel else logging.INFO))
        logging.captureWarnings(True)

        # set stream handler
        formatter = get_formatter(log_format if not parallel else 'none')
        handler = get_handler(formatter)
        main_logger.addHandler(handler)

        # display initialization
        if not parallel:
            logger.debug("Logger initialized")
    # update level
    elif debug:
        main_logger.setLevel(logging.DEBUG)

    return main_logger

def get_formatter(log_format:str='full'):
    """Function to obtain the formatter for stream handler.

    Parameters
    ----------
    log_format : {``'full'``, ``'short'``, ``'none'``}, default=``'full'``
        Format type for output to console.

    Returns
    -------
    formatter : :class:`logging.Formatter`
        Formatter for stream handler.
    """

    # default format
    if log_format == 'full':
        return FullFormatter('%(threadName)-12s %(levelname)-7s %(asctime)s: (%(name)s) %(message)s')

    # short format
    if log_format == 'short':
        return logging.Formatter('(%(levelname)s) %(name)s: %(message)s')

    # no formatting
    return logging.Formatter('%(message)s')

def get_handler(formatter):
    """Function to obtain the stream handler for console logger.

    Parameters
    ----------
    formatter : :class:`logging.Formatter`
        Formatter for stream handler.

    Returns
    -------
    handler : :class:`logging.StreamHandler`
        Stream handler (``stderr``) for console logger.
    """

    handler = logging.StreamHandler()
    handler.setFormatter(formatter)

    return handler

class FullFormatter(logging.Formatter):
    """Class to customize logging format.

    The class inherits :class:`logging.Formatter`.
    """

    def formatTime(self, record, datefmt=None):
        """Overriding method to display milliseconds in the time format.

        Parameters
        ----------
        record : :class:`logging.LogRecord`
            Current record to log.
        datefmt : str
            Date format for log.

        Returns
        -------
        f_time : str
            Formatted time.
        """

        # current time
        _time = dt.datetime.fromtimestamp(record.created)

        # format upto seconds and append milliseconds
        return _time.strftime('%Y-%m-%d %H:%M:%S') + '.{0:03d}'.format(int(record.msecs))
