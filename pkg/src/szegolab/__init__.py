"""Numerical laboratory for trace asymptotics of Toeplitz truncations.

Five reproducing-kernel settings (torus^d, finite abelian groups, weighted
Bergman disk, Fock plane, Paley-Wiener line) share one pipeline: assemble a
finite truncation of the Toeplitz map with a given symbol, diagonalize it,
form normalized trace functionals, and compare them against the limiting
symbol integrals, with two-sided convexity bounds and kernel-smoothing
transforms along the way.
"""

from .errors import (SzegolabError, ParseError, DomainError, ConfigError,
                     IntegrabilityError, AccuracyError, BasisMismatchError)
from .symbols import (Symbol, TrigPolynomial, Radial, ClosedForm, SampledGrid,
                      PsiFunction, parse_symbol, parse_psi, sampled_symbol,
                      fourier_coefficient, ess_bounds, is_nonnegative)
from .frames import (SettingIndex, FrameSetting, TorusSetting, GroupSetting,
                     BergmanSetting, FockSetting, PaleyWienerSetting,
                     make_setting, catalog, norms)
from .operators import (BasisDescriptor, TruncatedOperator, assemble,
                        assemble_torus, assemble_group, assemble_bergman,
                        assemble_fock, assemble_paley_wiener, pw_block_trace,
                        truncation_tail, export_text)
from .spectral import (Spectrum, eigen_decompose, trace_psi, weighted_trace,
                       trace_bounds_check)
from .berezin import (BerezinField, berezin_transform,
                      berezin_transform_quadrature, berezin_field,
                      radial_transform, contraction_report, fubini_check,
                      convergence_in_measure, exceedance_csv)
from .szego import (VARIANTS, target_integral, hypothesis_tags, trace_point,
                    berezin_lieb_check, run_limit_sweep, rate_fit,
                    moment_table, report_json, report_csv, plot_data)
from .verify import SUITES, run_suite

__version__ = "0.1.0"

__all__ = [
    "SzegolabError", "ParseError", "DomainError", "ConfigError",
    "IntegrabilityError", "AccuracyError", "BasisMismatchError",
    "Symbol", "TrigPolynomial", "Radial", "ClosedForm", "SampledGrid",
    "PsiFunction", "parse_symbol", "parse_psi", "sampled_symbol",
    "fourier_coefficient", "ess_bounds", "is_nonnegative",
    "SettingIndex", "FrameSetting", "TorusSetting", "GroupSetting",
    "BergmanSetting", "FockSetting", "PaleyWienerSetting",
    "make_setting", "catalog", "norms",
    "BasisDescriptor", "TruncatedOperator", "assemble", "assemble_torus",
    "assemble_group", "assemble_bergman", "assemble_fock",
    "assemble_paley_wiener", "pw_block_trace", "truncation_tail",
    "export_text",
    "Spectrum", "eigen_decompose", "trace_psi", "weighted_trace",
    "trace_bounds_check",
    "BerezinField", "berezin_transform", "berezin_transform_quadrature",
    "berezin_field", "radial_transform", "contraction_report",
    "fubini_check", "convergence_in_measure", "exceedance_csv",
    "VARIANTS", "target_integral", "hypothesis_tags", "trace_point",
    "berezin_lieb_check", "run_limit_sweep", "rate_fit", "moment_table",
    "report_json", "report_csv", "plot_data",
    "SUITES", "run_suite",
    "__version__",
]
