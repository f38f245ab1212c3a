import enum
import typing
from typing import Any, Mapping, Union, get_args, get_origin
import dataclasses as dc

from .exceptions import ConfigError
from .patterns import PatternModel
from ..types import StrategyId


class ConverterFunc(typing.NamedTuple):
    from_json_type: typing.Callable
    to_json_type: typing.Callable


TYPE_CONVERTERS = {
    PatternModel: ConverterFunc(from_json_type=PatternModel.parse, to_json_type=str),
    StrategyId: ConverterFunc(from_json_type=StrategyId.parse, to_json_type=lambda s: s.value),
}

NoneType = type(None)


class FieldCodec(typing.NamedTuple):
    name: str
    key: str
    tp: Any
    is_list: bool
    optional: bool
    default: Any


def join_path(*parts):
    """Dotted key path, skipping empty components."""
    return ".".join(str(p) for p in parts if p not in (None, "")) or None


def _remove_optional(tp):
    if get_origin(tp) is Union:
        args = get_args(tp)
        if len(args) == 2 and args[1] is NoneType:
            return args[0], True
    return tp, False


def get_type_hints(cl):
    return {k: _remove_optional(v) for k, v in typing.get_type_hints(cl).items()}


def _field_default(field):
    if field.default is not dc.MISSING:
        return field.default
    if field.default_factory is not dc.MISSING:
        return field.default_factory()
    return dc.MISSING


def extract_types(cls):
    types = get_type_hints(cls)
    for field in dc.fields(cls):
        t, optional = types[field.name]
        if get_origin(t) is list:
            is_list = True
            t = get_args(t)[0]
        else:
            is_list = False
        default = _field_default(field)
        yield FieldCodec(
            name=field.name,
            key=field.metadata.get("json", field.name),
            tp=t,
            is_list=is_list,
            optional=optional or default is None,
            default=default,
        )


def is_dataclass_dict(cls):
    return isinstance(cls, type) and dc.is_dataclass(cls) and issubclass(cls, DataclassDictMixIn)


def _type_name(value):
    return "null" if value is None else type(value).__name__


def _check_scalar(tp, value, path):
    if tp is bool:
        if isinstance(value, bool):
            return value
    elif tp is int:
        if isinstance(value, int) and not isinstance(value, bool):
            return value
    elif tp is float:
        if isinstance(value, (int, float)) and not isinstance(value, bool):
            return float(value)
    elif tp is str:
        if isinstance(value, str):
            return value
    else:
        return value
    raise ConfigError(f"expected {tp.__name__}, got {_type_name(value)} {value!r}", path=path)


def _from_value(tp, value, path):
    if is_dataclass_dict(tp):
        return tp.from_dict(value, path=path)
    if tp in TYPE_CONVERTERS:
        if not isinstance(value, str):
            raise ConfigError(f"expected str, got {_type_name(value)} {value!r}", path=path)
        try:
            return TYPE_CONVERTERS[tp].from_json_type(value)
        except ConfigError as e:
            raise ConfigError(e.message, path=path) from None
        except ValueError as e:
            raise ConfigError(str(e), path=path) from None
    if isinstance(tp, type) and issubclass(tp, enum.Enum):
        try:
            return tp(value)
        except ValueError:
            names = ", ".join(str(v.value) for v in tp)
            raise ConfigError(
                f"invalid value {value!r}, expected one of: {names}", path=path
            ) from None
    return _check_scalar(tp, value, path)


def _to_value(value, dict_factory):
    if isinstance(value, DataclassDictMixIn):
        return value.to_dict(dict_factory=dict_factory)
    converter = TYPE_CONVERTERS.get(type(value))
    if converter is not None:
        return converter.to_json_type(value)
    if isinstance(value, enum.Enum):
        return value.value
    return value


class DataclassDictMixIn:
    """Conversion between dataclasses and plain dictionaries as loaded from YAML.

    Field names can be renamed in the dictionary with `field(metadata={"json": "name"})`.
    Nested mix-in dataclasses, lists, enums and the types in `TYPE_CONVERTERS` are converted
    in both directions. Loading is strict: unknown keys, missing required keys and values of
    the wrong type raise `ConfigError` carrying the dotted key path.
    """

    _codecs: typing.List[FieldCodec] = None

    @classmethod
    def _setup(cls):
        if "_codecs" not in cls.__dict__:
            cls._codecs = list(extract_types(cls))

    @classmethod
    def from_dict(cls, d, path: str = None):
        cls._setup()
        if not isinstance(d, Mapping):
            raise ConfigError(f"expected a mapping, got {_type_name(d)}", path=path)
        known = {c.key for c in cls._codecs}
        for key in d:
            if key not in known:
                raise ConfigError(f"unknown key '{key}'", path=join_path(path, key))

        kwargs = {}
        for codec in cls._codecs:
            key_path = join_path(path, codec.key)
            if codec.key not in d:
                if codec.default is dc.MISSING:
                    raise ConfigError("missing required key", path=key_path)
                continue
            value = d[codec.key]
            if value is None:
                if not codec.optional:
                    raise ConfigError("must not be null", path=key_path)
            elif codec.is_list:
                if not isinstance(value, list):
                    raise ConfigError(
                        f"expected a list, got {_type_name(value)}", path=key_path
                    )
                value = [
                    _from_value(codec.tp, v, f"{key_path}[{i}]") for i, v in enumerate(value)
                ]
            else:
                value = _from_value(codec.tp, value, key_path)
            kwargs[codec.name] = value

        try:
            return cls(**kwargs)
        except ConfigError as e:
            raise ConfigError(e.message, path=join_path(path, e.path)) from None

    def to_dict(self, dict_factory=dict):
        self._setup()
        result = []
        for codec in self._codecs:
            value = getattr(self, codec.name)
            if value is None or value == codec.default:
                continue
            if codec.is_list:
                value = [_to_value(v, dict_factory) for v in value]
            else:
                value = _to_value(value, dict_factory)
            result.append((codec.key, value))
        return dict_factory(result)
