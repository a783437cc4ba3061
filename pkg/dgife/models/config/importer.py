# -*- coding: utf-8 -*-
# Copyright 2024 Halltic eSolutions S.L.
# License AGPL-3.0 or later (http://www.gnu.org/licenses/agpl).

import configparser
import logging

from ...exception import ParseError, ValidationError
from .common import SECTIONS, RunConfig, section_fields, validate

_logger = logging.getLogger(__name__)


def _new_parser():
    parser = configparser.ConfigParser(interpolation=None, delimiters=('=',),
                                       comment_prefixes=('#', ';'),
                                       inline_comment_prefixes=('#',),
                                       empty_lines_in_values=False,
                                       default_section='__defaults__')
    parser.optionxform = str
    return parser


def _read(parser, text, source):
    try:
        parser.read_string(text, source=source)
    except configparser.MissingSectionHeaderError as err:
        raise ParseError(err.lineno, 'key outside of a section: %s' % err.line.strip())
    except configparser.DuplicateSectionError as err:
        raise ParseError(err.lineno, 'duplicate section [%s]' % err.section)
    except configparser.DuplicateOptionError as err:
        raise ParseError(err.lineno, 'duplicate key %s in [%s]' % (err.option, err.section))
    except configparser.ParsingError as err:
        lineno, line = err.errors[0]
        raise ParseError(lineno, 'can not parse %s' % line.strip())


def parse_config_text(text, source='<config>'):
    """ Run configuration from its text form

    Missing sections and keys take their defaults.

    :raises ParseError: on syntax errors, with the line number
    :raises ValidationError: on unknown keys and out of range values
    """
    parser = _new_parser()
    _read(parser, text, source)
    defaults = RunConfig()
    sections = {}
    for name in parser.sections():
        if name not in SECTIONS:
            raise ValidationError(name, 'unknown section')
        current = getattr(defaults, name)
        known = {field.name: field for field in section_fields(current)}
        values = {}
        for key, raw in parser.items(name):
            field = known.get(key)
            if field is None:
                raise ValidationError('%s.%s' % (name, key), 'unknown key')
            try:
                values[key] = field.metadata['parser'](raw)
            except ValueError as err:
                raise ValidationError('%s.%s' % (name, key), str(err))
        sections[name] = type(current)(**values)
    config = RunConfig(**sections)
    return validate(config)


def parse_config(path):
    """ Run configuration stored in the file ``path`` """
    with open(path, encoding='utf-8') as handle:
        text = handle.read()
    config = parse_config_text(text, source=str(path))
    _logger.info('Configuration read from %s', path)
    return config
