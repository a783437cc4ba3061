# -*- coding: utf-8 -*-
# Copyright 2024 Halltic eSolutions S.L.
# License AGPL-3.0 or later (http://www.gnu.org/licenses/agpl).

from . import numerics
from . import models
from . import components
from . import wizards
