"""Valuation-form rigid checks: sup norms, Cousin splitting, the disc cover and the P^n contraction."""

from .cover import CocycleCheck, DiscCechReport, check_cocycle, random_cocycle, rigid_cech_disc
from .pn import HomotopyResult, PnCech, WindowError, cochain_str, pn_cech_homotopy
from .tate import (Annulus, CousinSplit, Disc, DomainError, PolydiscDomain, TateChunk, annulus, circle,
                   cousin_solve, disc, gauss_valuation, random_chunk, random_disc_chunk, sup_valuation,
                   vq_membership)
