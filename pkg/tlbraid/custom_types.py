"""
Argument types beyond str, int, float and bool: files checked on extension and existence, and fixed choices.
"""
from pathlib import Path


class FileBase(str):
    """ a path; `existing` True or False demands that the file does or does not exist, None skips the check """
    extensions = ()  # without leading dots
    existing = None

    @classmethod
    def string(cls, short=False):
        kinds = '/'.join(cls.extensions) or 'any'
        if short:
            return f"{kinds} file"
        demand = {True: ', existing', False: ', new', None: ''}[cls.existing]
        return f"File({kinds}{demand})"

    def __new__(cls, string=''):
        if not string or not string.strip():
            return super().__new__(cls)
        path = Path(string)
        if cls.extensions and path.suffix[1:] not in cls.extensions:
            raise ValueError(f"'{string}' should end in {' or '.join('.' + e for e in cls.extensions)}")
        if cls.existing is True and not path.is_file():
            raise ValueError(f"no file '{path}'")
        if cls.existing is False and path.is_file():
            raise ValueError(f"file '{path}' exists already")
        return super().__new__(cls, str(path))


def File(*extensions, existing=None):
    """ e.g. File('braid', 'txt', existing=True) for input braids """
    extensions = tuple(sorted({e.strip().lstrip('.') for e in extensions}))
    return type('File', (FileBase,), {'extensions': extensions, 'existing': existing})


class ChoiceBase(object):
    choices = ()  # set by Choice()

    @classmethod
    def string(cls, short=False):
        options = ' | '.join(map(str, cls.choices))
        return options if short else f"Choice({options})"

    def __new__(cls, value=None):
        value = cls.choices[0] if value is None else type(cls.choices[0])(value)
        if value not in cls.choices:
            raise ValueError(f"'{value}' is not one of {cls.choices}")
        return super().__new__(cls, value)


def Choice(*choices):
    """ the type of the choices becomes a base class, e.g. issubclass(Choice('full', 'seed'), str) """
    if not choices:
        raise ValueError("a Choice needs at least one choice")
    kind = type(choices[0])
    if any(type(c) is not kind for c in choices):
        raise ValueError(f"choices {choices} are not all of the same type")
    return type('Choice', (ChoiceBase, kind), {'choices': choices})


def get_type_string(type, short=False):
    try:
        return type.string(short)
    except AttributeError:
        return type.__name__ if short else type.__qualname__
