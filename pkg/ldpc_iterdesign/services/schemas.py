# -*- coding: utf-8 -*-
#
# Copyright (C) 2025 Cottage Labs.
#
# ldpc-iterdesign is free software; you can redistribute it and/or modify it
# under the terms of the MIT License; see LICENSE file for more details.

"""Marshmallow schemas for DDP documents, graph documents and run configs."""

from marshmallow import (
    EXCLUDE,
    Schema,
    ValidationError,
    fields,
    post_load,
    pre_dump,
    validate,
    validates,
    validates_schema,
)

from ..errors import ConfigError, InvalidDistributionError

COMMANDS = ("design", "threshold", "analyze", "build", "simulate", "reproduce")


class CheckTypeSchema(Schema):
    """One entry of the rho list."""

    type = fields.Str(required=True)
    code = fields.Str(required=True)
    fraction = fields.Float(required=True, validate=validate.Range(min=0.0, max=1.0))


class DegreeDistributionSchema(Schema):
    """Schema for DDP documents.

    ``precision`` declares how many decimals the fractions were printed
    with; normalization is then checked against that precision and the
    fractions are rescaled to sum to one exactly.
    """

    class Meta:
        unknown = EXCLUDE

    name = fields.Str(required=False, allow_none=True)
    rate = fields.Float(required=False, allow_none=True)
    precision = fields.Int(required=False, allow_none=True, validate=validate.Range(min=1, max=15))
    lam = fields.Dict(
        data_key="lambda",
        keys=fields.Str(),
        values=fields.Float(validate=validate.Range(min=0.0, max=1.0)),
        required=True,
    )
    rho = fields.List(fields.Nested(CheckTypeSchema), required=True, validate=validate.Length(min=1))
    published = fields.Dict(required=False)

    @validates("lam")
    def validate_degrees(self, value, **kwargs):
        """Degrees are integers >= 2."""
        for key in value:
            try:
                degree = int(key)
            except ValueError:
                raise ValidationError(f"degree {key!r} is not an integer")
            if degree < 2:
                raise ValidationError(f"degree {degree} < 2")

    @pre_dump
    def from_pair(self, ddp, **kwargs):
        """Flatten a DegreeDistributionPair for dumping."""
        from ..ensemble import design_rate

        document = {
            "lam": {str(d): f for d, f in ddp.lam.entries},
            "rho": [
                {"type": t.name, "code": t.code.identifier, "fraction": t.fraction}
                for t in ddp.rho.types
            ],
            "rate": design_rate(ddp),
        }
        if ddp.name:
            document["name"] = ddp.name
        if ddp.published:
            document["published"] = dict(ddp.published)
        return document

    @post_load
    def make_pair(self, data, **kwargs):
        """Build the DegreeDistributionPair."""
        from ..component_codes import get_code
        from ..ensemble import CheckDistribution, CheckType, DegreeDistributionPair, VariableDistribution

        lam = {int(d): f for d, f in data["lam"].items()}
        rho = data["rho"]
        precision = data.get("precision")
        if precision:
            lam = _rescale(lam, "lambda", precision)
            total = _rescaled_total([t["fraction"] for t in rho], "rho", precision)
            rho = [dict(t, fraction=t["fraction"] / total) for t in rho]
        types = [CheckType(name=t["type"], code=get_code(t["code"]), fraction=t["fraction"]) for t in rho]
        return DegreeDistributionPair(
            lam=VariableDistribution(lam),
            rho=CheckDistribution(types),
            name=data.get("name"),
            published=data.get("published") or {},
        )


def _rescaled_total(fractions, label, precision):
    total = sum(fractions)
    allowed = len(fractions) * 10.0 ** (-precision) * (1 + 1e-9)
    if abs(total - 1.0) > allowed:
        raise InvalidDistributionError(
            f"sum({label}) = {total:.12g} violates normalization "
            f"(must be 1 within {allowed:.3g} at precision {precision})"
        )
    return total


def _rescale(values, label, precision):
    total = _rescaled_total(list(values.values()), label, precision)
    return {k: v / total for k, v in values.items()}


def _messages(error: ValidationError) -> str:
    def flatten(prefix, value):
        if isinstance(value, dict):
            for k, v in value.items():
                yield from flatten(f"{prefix}.{k}" if prefix else str(k), v)
        elif isinstance(value, list):
            for v in value:
                yield from flatten(prefix, v)
        else:
            yield f"{prefix}: {value}"

    return "; ".join(flatten("", error.messages))


def load_ddp_document(document) -> "DegreeDistributionPair":  # noqa: F821
    """Validate a DDP document and build the pair.

    Raises:
        InvalidDistributionError: on any schema or normalization violation
    """
    try:
        return DegreeDistributionSchema().load(document)
    except ValidationError as e:
        raise InvalidDistributionError(_messages(e)) from e


class CheckNodeSchema(Schema):
    """One check node of a graph document."""

    code = fields.Str(required=True)
    sockets = fields.List(fields.Int(validate=validate.Range(min=0)), required=True)


class TannerGraphSchema(Schema):
    """Graph documents keep check-node codes and socket order."""

    n = fields.Int(required=True, validate=validate.Range(min=1))
    vn_degrees = fields.List(fields.Int(validate=validate.Range(min=1)), required=True)
    checks = fields.List(fields.Nested(CheckNodeSchema), required=True)

    @pre_dump
    def from_graph(self, graph, **kwargs):
        """Flatten a TannerGraph for dumping."""
        return {
            "n": graph.n,
            "vn_degrees": [int(d) for d in graph.vn_degrees],
            "checks": [
                {"code": code.identifier, "sockets": [int(v) for v in sockets]}
                for code, sockets in zip(graph.cn_codes, graph.cn_sockets)
            ],
        }

    @validates_schema
    def validate_lengths(self, data, **kwargs):
        """Every socket refers to an existing variable node."""
        if len(data["vn_degrees"]) != data["n"]:
            raise ValidationError("vn_degrees must have n entries")
        for check in data["checks"]:
            if any(v >= data["n"] for v in check["sockets"]):
                raise ValidationError("socket refers to a variable node >= n")

    @post_load
    def make_graph(self, data, **kwargs):
        """Build the TannerGraph and check socket counts, duplicate edges and VN degrees."""
        import numpy as np

        from ..component_codes import get_code
        from ..construction import TannerGraph
        from ..errors import ComponentCodeError, ConstructionError

        try:
            graph = TannerGraph(
                vn_degrees=np.asarray(data["vn_degrees"], dtype=np.int64),
                cn_codes=tuple(get_code(c["code"]) for c in data["checks"]),
                cn_sockets=tuple(np.asarray(c["sockets"], dtype=np.int64) for c in data["checks"]),
            )
            graph.check_invariants()
        except (ComponentCodeError, ConstructionError) as e:
            raise ValidationError(str(e)) from e
        return graph


class RunConfigSchema(Schema):
    """Configuration file for the command line.

    One block per command holds default values for that command's options;
    options given on the command line take precedence.
    """

    seed = fields.Int(required=False)
    output_dir = fields.Str(required=False)
    threads = fields.Int(required=False, validate=validate.Range(min=1))
    design = fields.Dict(keys=fields.Str(), required=False)
    threshold = fields.Dict(keys=fields.Str(), required=False)
    analyze = fields.Dict(keys=fields.Str(), required=False)
    build = fields.Dict(keys=fields.Str(), required=False)
    simulate = fields.Dict(keys=fields.Str(), required=False)
    reproduce = fields.Dict(keys=fields.Str(), required=False)


def load_run_config(document) -> dict:
    """Validate a run-config document.

    Raises:
        ConfigError: on any schema violation
    """
    try:
        return RunConfigSchema().load(document)
    except ValidationError as e:
        raise ConfigError(_messages(e)) from e
