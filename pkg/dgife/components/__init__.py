# -*- coding: utf-8 -*-
# Copyright 2024 Halltic eSolutions S.L.
# License AGPL-3.0 or later (http://www.gnu.org/licenses/agpl).

from . import core
from . import assembler
from . import exporter
from . import solver
from . import study
from . import checker
