from .laurent import ONE, T1, T2, ZERO, LaurentParseError, TLaurent, format_laurent, parse_laurent
from .ratfunc import (DegenerateDirection, PoleError, RatFunc, UnivariateRatFunc, eval_t_one,
                      ratfunc_reduce, ratfunc_sum, subst_univariate)
from .series import (Alphabet, MultiSeries, SeriesError, adams, dumps, exp_alphabet, series_arith,
                     series_exp, series_from_json, series_to_json)
