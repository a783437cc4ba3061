# -*- coding: utf-8 -*-
# Copyright 2024 Halltic eSolutions S.L.
# License AGPL-3.0 or later (http://www.gnu.org/licenses/agpl).

from .common import SECTIONS, section_fields
from .importer import parse_config_text


def _format(value):
    if value is None:
        return 'none'
    if isinstance(value, bool):
        return 'true' if value else 'false'
    if isinstance(value, float):
        return repr(value)
    if isinstance(value, tuple):
        return ', '.join(str(item) for item in value)
    return str(value)


def serialize(config):
    """ Normalized text form, every key of every section in declaration order """
    lines = []
    for name in SECTIONS:
        section = getattr(config, name)
        if lines:
            lines.append('')
        lines.append('[%s]' % name)
        for field in section_fields(section):
            lines.append('%s = %s' % (field.name, _format(getattr(section, field.name))))
    return '\n'.join(lines) + '\n'


def normalize(text):
    return serialize(parse_config_text(text))


def write_config(config, path):
    with open(path, 'w', encoding='utf-8') as handle:
        handle.write(serialize(config))
    return path
