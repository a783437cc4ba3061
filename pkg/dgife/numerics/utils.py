# -*- coding: utf-8 -*-
# Copyright 2024 Halltic eSolutions S.L.
# License AGPL-3.0 or later (http://www.gnu.org/licenses/agpl).

import logging
import os
from concurrent.futures import ThreadPoolExecutor

import numpy as np
import unicodecsv

_logger = logging.getLogger(__name__)

THREADS_ENV = 'DGIFE_THREADS'
DEFAULT_CHUNK_SIZE = 2048


def worker_count(requested=0):
    """ Number of workers used for element and edge loops

    :param requested: explicit count from the configuration, 0 means
                      read ``DGIFE_THREADS`` from the environment
    """
    if requested and requested > 0:
        return int(requested)
    raw = os.environ.get(THREADS_ENV, '').strip()
    if not raw:
        return 1
    try:
        count = int(raw)
    except ValueError:
        _logger.warning('Ignoring %s=%r, it is not an integer', THREADS_ENV, raw)
        return 1
    return max(count, 1)


def chunks(items, size=DEFAULT_CHUNK_SIZE):
    """ Split an index array in consecutive slices of at most ``size`` """
    items = np.asarray(items)
    return [items[start:start + size] for start in range(0, len(items), size)]


def ordered_map(func, batches, workers=1):
    """ Apply ``func`` to every batch and return the results in batch order

    The results are consumed in submission order whatever the worker
    count, so the reductions done by callers are bit-stable.
    """
    batches = list(batches)
    if workers <= 1 or len(batches) <= 1:
        return [func(batch) for batch in batches]
    with ThreadPoolExecutor(max_workers=workers) as executor:
        return list(executor.map(func, batches))


def format_number(value, digits=16):
    """ Text form of a number used in every dump, NaN is written empty """
    if value is None:
        return ''
    if isinstance(value, (int, np.integer)):
        return '%d' % value
    value = float(value)
    if value != value:
        return ''
    return '%.*g' % (digits, value)


def open_writer(handle, delimiter=','):
    """ ``unicodecsv`` writer on a binary handle with stable line endings """
    return unicodecsv.writer(handle, encoding='utf-8', delimiter=delimiter, lineterminator='\n')
