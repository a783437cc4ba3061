# -*- coding: utf-8 -*-
# Copyright 2024 Halltic eSolutions S.L.
# License AGPL-3.0 or later (http://www.gnu.org/licenses/agpl).

from . import geometry
from . import mesh
from . import problem
from . import ife_space
from . import error_analysis
from . import adaptivity
from . import config
