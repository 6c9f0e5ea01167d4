"""
Declarative command lines: `Argument` descriptors on `CmdParser` subclasses, nested sub-commands and
`command()` strings that reproduce the parsed values.
"""
import copy
import sys

from typing import Callable, Mapping

from tlbraid.custom_types import get_type_string
from tlbraid.exceptions import ConfigError, ValidationError
from tlbraid.tools.utils import MISSING, get_typed_class_attrs, count, cached_property
from tlbraid.tools.parsers import quote_split, quote_join, default_type_codecs

PROG = 'tlbraid'
BASIC_TYPES = (str, int, float, bool)
RESERVED_NAMES = frozenset({'help'})


def default_flags(name):
    """ 'max_len' -> ['--max-len', '-m'] """
    return ['--' + name.replace('_', '-'), '-' + name[0]]


def check_flag(flag, name):
    flag = flag.strip()
    if flag.startswith('--'):
        if len(flag) < 3:
            raise ConfigError(f"flag '{flag}' of '{name}' needs a name after '--'")
    elif flag.startswith('-'):
        if len(flag) != 2:
            raise ConfigError(f"flag '{flag}' of '{name}': a single dash takes one character")
    else:
        raise ConfigError(f"flag '{flag}' of '{name}' does not start with '-' or '--'")
    return flag


def split_tokens(tokens, flag_lookup):
    """ (values before the first flag, {argument name: values after its flag}) """
    positionals, flagged = [], {}
    current = positionals
    for token in tokens:
        if token in flag_lookup:
            current = flagged[flag_lookup[token].name] = []
        elif token.startswith('--'):
            raise ValidationError(f"unknown flag '{token}'")
        else:
            current.append(token)
    return positionals, flagged


def assign_positionals(values, arguments, flagged):
    """
    Positional values go to the arguments declared before the first flagged one, single values from
    both ends inward; what remains goes to the one 'many' argument left in between.
    """
    candidates = []
    for name, argument in arguments.items():
        if name in flagged:
            break
        candidates.append(argument)
    values, assigned = list(values), {}
    try:
        while values and not candidates[0].many:
            assigned[candidates.pop(0).name] = [values.pop(0)]
        while values and not candidates[-1].many:
            assigned[candidates.pop().name] = [values.pop()]
    except IndexError:
        raise ValidationError(f"more positional values than arguments: {values}")
    if values:
        if len(candidates) != 1:
            raise ValidationError(f"positional values {values} are ambiguous between several arguments")
        assigned[candidates[0].name] = values
    return assigned


class Argument(object):
    """
    One command line argument. `type` is a basic type or one with a codec; `many` collects a list; `valid`
    is an extra predicate on the (converted) value. A bool with default False is a switch.
    """
    codecs = default_type_codecs.copy()

    def __init__(self, type, flags=None, many=False, default=MISSING, valid=None, help=''):
        self.type = type
        self.flags = flags
        self.many = many
        self.default = default
        self.valid = valid
        self.help = help
        self.name = self.owner = None  # set in __set_name__
        self._encode, self._decode = self.codecs.get(type, (str, type))
        self.positional = False  # can be given without flag in short commands

    @property
    def full_name(self):
        return f"{self.owner.__name__}.{self.name}"

    @property
    def required(self):
        return self.default is MISSING

    @property
    def switch(self):
        return self.type is bool and self.default is False

    def __set_name__(self, owner, name):
        self.owner = owner
        self.name = name

    def __get__(self, values, cls=None):
        if values is None:
            return self
        stored = values._stored
        if self.name not in stored:
            if self.required:
                raise AttributeError(f"no value for required argument '{self.name}'")
            stored[self.name] = self.default
        return stored[self.name]

    def __set__(self, values, value):
        try:
            values._stored[self.name] = self.validate(value)
        except (TypeError, ValueError, AttributeError) as error:
            raise ValidationError(f"invalid value '{value}' for '{self.name}': {error}")

    def configure(self, previous):
        """ checks the declaration when the owner class is created; `previous` holds earlier arguments """
        if not issubclass(self.type, BASIC_TYPES + tuple(self.codecs)):
            raise TypeError(f"unsupported type '{self.type.__name__}' for '{self.full_name}'")
        if self.name in RESERVED_NAMES:
            raise ConfigError(f"'{self.name}' is reserved and cannot name an argument")
        if self.name.startswith('_'):
            raise ConfigError(f"argument name '{self.name}' cannot start with '_'")
        self.flags = self._configure_flags(previous)
        self.default = self._configure_default()
        self.positional = (count(previous.values(), key=lambda a: a.many) <= 1 and
                           all(a.positional and not a.switch for a in previous.values()))

    def _configure_flags(self, previous):
        flags = [check_flag(f, self.name) for f in self.flags] if self.flags else default_flags(self.name)
        taken = {flag for argument in previous.values() for flag in argument.flags}
        flags = tuple(flag for flag in flags if flag not in taken)
        if not flags:
            raise ConfigError(f"all flags of '{self.name}' are already taken by other arguments")
        return flags

    def _configure_default(self):
        if self.default is None or self.default is MISSING:
            return self.default
        try:
            return self._cast(self.default)
        except (TypeError, ValueError, AttributeError) as error:
            raise ConfigError(f"invalid default '{self.default}' for '{self.full_name}': {error}")

    def _cast(self, value):
        def convert(v):
            return v if type(v) is self.type else self.type(v)

        value = [convert(v) for v in value] if self.many else convert(value)
        if self.valid and not self.valid(value):
            raise ValueError(f"'{value}' is rejected for '{self.name}'")
        return value

    def validate(self, value):
        if value is MISSING:
            raise ValueError(f"missing required value for '{self.name}'")
        return value if value is self.default else self._cast(value)

    def encode(self, value):
        if value is None or value is MISSING:
            return ''
        return quote_join(self._encode(v) for v in value) if self.many else self._encode(value)

    def decode(self, text):
        """ `text` is a string, or a list of strings for 'many' arguments """
        if self.many:
            strings = quote_split(text) if isinstance(text, str) else text
            return [self._decode(s) for s in strings] if len(strings) else self.default
        if text == '' and self.type is not str:
            return self.default
        return self._decode(text)

    def parse_list(self, strings):
        """ the value from the strings after the flag; `strings` is MISSING when the flag is absent """
        if strings is MISSING:
            if self.required:
                raise ValidationError(f"missing flag or value for '{self.name}'")
            return self.default
        if not strings:
            if self.switch:
                return True
            raise ValidationError(f"flag of '{self.name}' needs a value")
        return self.decode(strings if self.many else strings[0])

    def flag(self, short=False):
        return min(self.flags, key=len) if short else max(self.flags, key=len)

    def cmd(self, values, short=False):
        """ command line part for this argument """
        value = self.__get__(values)
        if self.switch:
            return self.flag(short) if value else ''
        text = self.encode(value)
        if not text or (short and self.positional):
            return text
        return f"{self.flag(short)} {text}"

    def usage(self):
        text = self.flag() + (' ...' if self.many else '')
        return text if self.required else f"[{text}]"

    def option(self):
        text = f"{', '.join(self.flags)} ({get_type_string(self.type, short=True)})"
        if not self.required:
            text += f" default {self.default}"
        return f"{text}: {self.help}" if self.help else text


class ArgumentValues(Mapping):
    """ Parsed values of one parser. Apart from the arguments all attributes start with '_'. """
    _arguments = {}

    def __init_subclass__(cls, **kwargs):
        super().__init_subclass__(**kwargs)
        arguments = {}
        for name, argument in get_typed_class_attrs(cls, Argument).items():
            argument.configure(previous=arguments)
            arguments[name] = argument
        cls._arguments = arguments

    def __init__(self, **kwargs):
        super().__setattr__('_stored', {})
        defaults = {n: a.default for n, a in self._arguments.items() if not a.required}
        self._update(**{**defaults, **kwargs})

    def __len__(self):
        return len(self._stored)

    def __iter__(self):
        yield from self._stored

    def __getitem__(self, key):
        return self._stored[key]

    def __setattr__(self, name, value):
        if name not in self._arguments:
            raise AttributeError(f"'{name}' is not an argument of this parser")
        super().__setattr__(name, value)

    def _update(self, **kwargs):
        for name, value in kwargs.items():
            setattr(self, name, value)


class CmdParser(object):
    """
    Subclasses declare `Argument`s; an instance binds a target callable and named sub-parsers. Arguments of a
    base parser are inherited and follow the parser's own.
    """
    values_class = None
    arguments = {}

    def __init_subclass__(cls, **kwargs):
        super().__init_subclass__(**kwargs)
        declared = get_typed_class_attrs(cls, Argument)
        for name in declared:
            delattr(cls, name)
        for base in cls.__mro__[1:]:
            for name, argument in getattr(base, 'arguments', {}).items():
                if name not in declared:
                    declared[name] = copy.copy(argument)
        cls.values_class = type(cls.__name__ + 'Values', (ArgumentValues,), declared)
        cls.arguments = cls.values_class._arguments

    @staticmethod
    def _strip_prog(tokens):
        return tokens[1:] if tokens and tokens[0] == PROG else tokens

    def __init__(self, __target: Callable = None, **sub_parsers: 'CmdParser'):
        self.target = __target  # double underscore: no clash with the names in **sub_parsers
        self.parent = None
        self.sub_parsers = sub_parsers
        for name, sub_parser in sub_parsers.items():
            if sub_parser.parent is not None:
                raise ValueError(f"sub-parser '{name}' already belongs to another parser")
            sub_parser.parent = self
        self.values = self.values_class()
        self.result = None

    @cached_property
    def sub_path(self):
        """ the sub-command names from the root parser to this one """
        if self.parent is None:
            return None
        name = next(n for n, p in self.parent.sub_parsers.items() if p is self)
        return f"{self.parent.sub_path} {name}" if self.parent.sub_path else name

    def _dispatch(self, tokens, run):
        head = tokens[0] if tokens else None
        if head == '--help' or (head is None and self.target is None and self.sub_parsers):
            print(self.help())
            return self
        if head in self.sub_parsers:
            return self.sub_parsers[head]._dispatch(tokens[1:], run)
        self._parse_tokens(tokens)
        if run:
            self.run(do_raise=False)
        return self

    def _parse_tokens(self, tokens):
        lookup = {flag: argument for argument in self.arguments.values() for flag in argument.flags}
        positionals, flagged = split_tokens(tokens, lookup)
        flagged.update(assign_positionals(positionals, self.arguments, flagged))
        self.update(**{n: a.parse_list(flagged.get(n, MISSING)) for n, a in self.arguments.items()})

    def update(self, **kwargs):
        self.values._update(**kwargs)

    def cmd(self, argv=None):
        """ parses and runs the command line, by default from sys.argv """
        tokens = list(sys.argv[1:] if argv is None else argv)
        return self._dispatch(self._strip_prog(tokens), run=True)

    def parse(self, *cmds, run=False):
        """ parses a command line given as string(s); returns the (sub-)parser that handled it """
        return self._dispatch(self._strip_prog(quote_split(' '.join(cmds))), run=run)

    def __call__(self, cmd, run=True):
        return self.parse(cmd, run=run)

    def run(self, do_raise=True):
        """ calls the target with the current values and keeps the result """
        if self.target is not None:
            self.result = self.target(**self.values)
        elif do_raise:
            raise ValueError("parser has no target to run")
        return self.result

    def command(self, short=False):
        """ the command line that reproduces the current values; short flags and positionals if `short` """
        try:
            parts = [argument.cmd(self.values, short) for argument in self.arguments.values()]
        except AttributeError:
            return None
        return ' '.join(part for part in [self.sub_path] + parts if part)

    def dict(self):
        return dict(self.values)

    def help(self):
        prefix = f"{PROG} {self.sub_path}" if self.sub_path else PROG
        lines = ['usage:'] + self._usage_lines(prefix, '  ') + ['', 'options:'] + self._option_lines('  ')
        return '\n'.join(lines)

    def _usage_lines(self, prefix, indent):
        lines = [f"{indent}{prefix} {' '.join(a.usage() for a in self.arguments.values())}".rstrip()]
        for name, sub_parser in self.sub_parsers.items():
            lines += sub_parser._usage_lines(f"{prefix} {name}", indent + '  ')
        return lines

    def _option_lines(self, indent):
        lines = [indent + argument.option() for argument in self.arguments.values()]
        for name, sub_parser in self.sub_parsers.items():
            lines.append(f"{indent}{name}:")
            lines += sub_parser._option_lines(indent + '  ')
        return lines
