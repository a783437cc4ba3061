# -*- coding: utf-8 -*-
# Copyright 2024 Halltic eSolutions S.L.
# License AGPL-3.0 or later (http://www.gnu.org/licenses/agpl).

from . import wizard_converge
from . import wizard_adapt
from . import wizard_dump_mesh
from . import wizard_dump_field
from . import wizard_check
