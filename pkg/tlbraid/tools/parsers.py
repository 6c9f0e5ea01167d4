"""
Text codecs for command line values, settings, braid files and net files.
"""
from functools import wraps

import numpy as np

from tlbraid.tools.utils import TRUE, FALSE

TRUE_STRINGS = frozenset((TRUE, 'yes', 't', 'y', '1', 'on'))
FALSE_STRINGS = frozenset((FALSE, 'no', 'f', 'n', '0', 'off'))


class ParseError(ValueError):
    pass


def parse_error(func):
    """ re-raises TypeError and ValueError of a decoder as ParseError """
    @wraps(func)
    def inner(*args, **kwargs):
        try:
            return func(*args, **kwargs)
        except ParseError:
            raise
        except (TypeError, ValueError) as error:
            raise ParseError(f"{func.__name__}: {error}")

    return inner


def parse_bool(arg):
    if isinstance(arg, (bool, int)):
        return bool(arg)
    word = arg.strip().lower()
    if word in TRUE_STRINGS:
        return True
    if word in FALSE_STRINGS:
        return False
    raise ValueError(f"'{arg}' is not a boolean")


def encode_bool(val):
    return TRUE if val else FALSE


default_type_codecs = {
    bool: (encode_bool, parse_bool),
}


def quote_split(string, quote='"'):
    """ splits on whitespace except inside quotes; quotes around an empty string give '' """
    strings, rest = [], string
    while rest:
        before, found, rest = rest.partition(quote)
        strings.extend(before.split())
        if found:
            inside, closed, rest = rest.partition(quote)
            if not closed:
                raise ValueError(f"unmatched {quote} in '{string}'")
            strings.append(inside)
    return strings


def quote_join(strings, quote='"'):
    return ' '.join(quotify(s, quote) for s in strings)


def quotify(string, quote='"'):
    return f'{quote}{string}{quote}' if string == '' or ' ' in string else string


@parse_error
def parse_exponent_pairs(string):
    """ '-2:-1,2:-1' -> {-2: -1, 2: -1} """
    pairs = {}
    for item in string.split(','):
        item = item.strip()
        if not item:
            continue
        exponent, sep, coefficient = item.partition(':')
        if not sep:
            raise ValueError(f"missing ':' in term '{item}'")
        exponent = int(exponent)
        if exponent in pairs:
            raise ValueError(f"exponent {exponent} occurs twice")
        pairs[exponent] = int(coefficient)
    return pairs


def encode_exponent_pairs(pairs):
    return ','.join(f"{e}:{c}" for e, c in sorted(pairs.items()))


@parse_error
def parse_complex(string):
    """ 're,im' -> complex """
    re, sep, im = string.partition(',')
    if not sep:
        raise ValueError(f"complex number '{string}' should be formatted as 're,im'")
    return complex(float(re), float(im))


def encode_complex(value):
    return f"{float(value.real)!r},{float(value.imag)!r}"


def encode_matrix(matrix):
    """ row-major list of [re, im] pairs, as stored in json """
    return [[float(v.real), float(v.imag)] for v in matrix.ravel()]


@parse_error
def decode_matrix(pairs):
    values = np.array([complex(re, im) for re, im in pairs])
    dim = int(round(len(values) ** 0.5))
    if dim * dim != len(values):
        raise ValueError(f"{len(values)} entries do not form a square matrix")
    return values.reshape(dim, dim)


@parse_error
def parse_braid_text(text):
    """ 'strands N' on the first line, signed generator indices on the second """
    lines = [line for line in text.splitlines() if line.strip() and not line.lstrip().startswith('#')]
    if not lines:
        raise ValueError("empty braid text")
    keyword, _, strands = lines[0].partition(' ')
    if keyword != 'strands':
        raise ValueError(f"braid text should start with 'strands N', not '{lines[0]}'")
    if len(lines) > 2:
        raise ValueError("braid text has more than two lines")
    letters = [int(s) for s in lines[1].split()] if len(lines) == 2 else []
    return int(strands), letters


def encode_braid_text(strands, letters):
    return f"strands {strands}\n{' '.join(map(str, letters))}\n"


if __name__ == '__main__':
    in_strings = ['', '  ', 'a', ' a', ' a  ', 'a b', 'a "b c" d', 'a "b " d', 'a "" b', '""']
    for string in in_strings:
        decoded = quote_split(string)
        recoded = quote_join(decoded)
        print(' > '.join([string, str(decoded), recoded]), 'DIFFERENT' if string != recoded else '')
