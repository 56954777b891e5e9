# This file is part of tapestry, licensed under the BSD-3-Clause License.
"""
Value parsers shared by the command line and the run configuration.
"""
# stdlib
from argparse import ArgumentTypeError
from typing import Callable, Dict, List, Optional, Tuple, TypeVar

T = TypeVar("T")

TRUE_WORDS = ("1", "yes", "true", "on")
FALSE_WORDS = ("0", "no", "false", "off")


def comma_list(list_str, item_func=None):
    # type: (str, Optional[Callable[[str], T]]) -> List[T]
    if not list_str:
        raise ArgumentTypeError("Invalid comma list")
    item_func = item_func or (lambda i: i)  # type: ignore
    return [item_func(i.strip()) for i in list_str.split(",") if i.strip()]


def list_of_floats(float_csv):
    # type: (str) -> List[float]
    try:
        return comma_list(float_csv, float)
    except ValueError:
        raise ArgumentTypeError("Invalid list of floats: {0}".format(float_csv))


def site(site_str):
    # type: (str) -> Tuple[int, ...]
    """ ``"3"`` or ``"1 -2"``: integer coordinates separated by blanks. """
    try:
        coordinates = tuple(int(c) for c in site_str.split())
    except ValueError:
        raise ArgumentTypeError("Invalid site: {0}".format(site_str))
    if not coordinates:
        raise ArgumentTypeError("Invalid site: {0!r}".format(site_str))
    return coordinates


def site_box(box_str):
    # type: (str) -> Tuple[Tuple[int, ...], Tuple[int, ...]]
    """ ``"lower, upper"``, both corners as in :func:`site`. """
    corners = comma_list(box_str, site)
    if len(corners) != 2 or len(corners[0]) != len(corners[1]):
        raise ArgumentTypeError("Invalid box (expected 'lower, upper'): {0}".format(box_str))
    return corners[0], corners[1]


def properties(properties_str):
    # type: (str) -> Dict[str, str]
    """ ``"spin=up, charge=-1"``. """
    if not properties_str or not properties_str.strip():
        return {}
    parsed = {}  # type: Dict[str, str]
    for item in comma_list(properties_str):
        key, sep, value = item.partition("=")
        if not sep or not key.strip():
            raise ArgumentTypeError("Invalid property {0!r} (expected key=value)".format(item))
        parsed[key.strip()] = value.strip()
    return parsed


def boolean(bool_str):
    # type: (str) -> bool
    word = bool_str.strip().lower()
    if word in TRUE_WORDS:
        return True
    if word in FALSE_WORDS:
        return False
    raise ArgumentTypeError("Invalid boolean: {0}".format(bool_str))
