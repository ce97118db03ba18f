import logging
from pathlib import Path

import numpy as np

from ..errors import ConfigurationError
from ..models import HestonConfig, QuadraticNoiseModel, describe_model, model_from_config
from ..pce import PceModel
from ..sampling import RngStream
from ..subspace import (
    as_gradient_matrix,
    assemble_bhat,
    estimate_gamma,
    gas_subspace,
    select_d1,
    sobol_indices_from_bhat,
    sufficient_summary,
    upper_sobol_indices,
)
from ..types import GasConfig, VerbInfo
from .estimators import reference_value, run_estimator
from .experiment import EstimatorKind, ExperimentConfig, validate_budget
from .outputs import (
    emit_estimator_result,
    emit_heatmap,
    emit_records,
    emit_spectrum,
    emit_summary,
    output_stem,
    read_json,
    write_json,
)
from .studies import (
    HEATMAP_HESTON,
    HEATMAP_RHOS,
    HEATMAP_SIGMAS,
    NOISE_INCREMENTS,
    NOISE_SIGMAS,
    NOISE_SPLITS,
    RIDGE_SPLITS,
    ebola_study,
    heatmap_sweep,
    heston_spectrum_study,
    noise_study,
    ridge_study,
)

logger = logging.getLogger(__name__)

CONFIG_FIELDS = ("N", "N1", "K", "p", "M1", "M2", "M", "h", "d1", "d1_rule", "companion_sequence")


def model_mapping(params, default="quadratic"):
    """``{"model": id, **parameters}`` from a string id or a mapping plus ``model_params``."""
    model = params.get("model") or default
    if isinstance(model, str):
        mapping = {"model": model}
    elif isinstance(model, dict):
        mapping = dict(model)
    else:
        raise ConfigurationError(f"model must be an id or a mapping, got {type(model).__name__}")
    mapping.update(params.get("model_params") or {})
    if "model" not in mapping:
        mapping["model"] = default
    return mapping


def _pairs(values):
    return [(int(a), int(b)) for a, b in values]


def _floats(values):
    return [float(v) for v in values]


class Verb:
    """Base class for experiment verbs run through the :class:`ExperimentRunner`."""

    name = ""
    description = ""
    version = "1.0.0"
    requires_seed = True
    default_model = "quadratic"
    parameters = {}

    def as_verb_info(self):
        return VerbInfo(
            name=self.name,
            description=self.description,
            version=self.version,
            parameters=dict(self.parameters),
            requires_seed=self.requires_seed,
        )

    def execute(self, **params):
        raise NotImplementedError

    def model(self, params):
        return model_from_config(model_mapping(params, self.default_model))

    def output_dir(self, params):
        return Path(params.get("output_dir") or "results")

    def stem(self, params, model=None, estimator=None):
        return output_stem(self.name, model, estimator, params.get("seed"))


class EigVerb(Verb):
    name = "eig"
    description = "Spectrum and eigenvectors of the GAS or AS matrix for a model"
    parameters = {"method": "gas | as", "M1": "int", "M2": "int", "M": "int", "h": "float"}

    def execute(self, **params):
        model = self.model(params)
        seed = int(params["seed"])
        method = str(params.get("method", "gas")).lower()
        if method == "gas":
            cfg = GasConfig(
                M1=int(params.get("M1", 1000)),
                M2=int(params.get("M2", 10)),
                seed=seed,
                companion_sequence=params.get("companion_sequence", "restart"),
            )
            decomp = gas_subspace(model, cfg, RngStream(seed))
        elif method == "as":
            M = int(params.get("M") or int(params.get("M1", 1000)) * int(params.get("M2", 10)))
            _, decomp = as_gradient_matrix(
                model, model.distribution, M, float(params.get("h", 1e-3)), RngStream(seed)
            )
        else:
            raise ConfigurationError(f"Unknown method '{method}'. Available: gas, as")

        d1 = params.get("d1")
        d1 = int(d1) if d1 is not None else select_d1(decomp.normalized())
        decomp = decomp.with_d1(d1)
        stem = self.stem(params, model.name, method)
        files = emit_spectrum(decomp, self.output_dir(params), stem)
        return {
            "method": method,
            "lambdas": decomp.lambdas.tolist(),
            "spectrum": decomp.normalized().tolist(),
            "eigenvectors": [decomp.U[:, i].tolist() for i in range(min(2, decomp.dimension))],
            "d1": d1,
            "files": [str(p) for p in files],
        }


class GammaVerb(Verb):
    name = "gamma"
    description = "Gamma estimates along the GAS directions, next to the eigenvalues"
    parameters = {"M1": "int", "M2": "int", "gamma_M1": "int", "gamma_M2": "int"}

    def execute(self, **params):
        model = self.model(params)
        seed = int(params["seed"])
        M1, M2 = int(params.get("M1", 1000)), int(params.get("M2", 10))
        cfg = GasConfig(
            M1=M1,
            M2=M2,
            seed=seed,
            companion_sequence=params.get("companion_sequence", "restart"),
        )
        master = RngStream(seed)
        decomp = gas_subspace(model, cfg, master.child(0))
        gammas = estimate_gamma(
            model,
            model.distribution,
            decomp.U,
            int(params.get("gamma_M1", M1)),
            int(params.get("gamma_M2", M2)),
            master.child(1),
        )
        gammas.seed, gammas.fingerprint = seed, decomp.fingerprint
        d1 = select_d1(gammas.normalized())
        decomp = decomp.with_d1(d1)
        files = emit_spectrum(
            decomp, self.output_dir(params), self.stem(params, model.name), gammas=gammas
        )
        return {
            "lambda": decomp.normalized().tolist(),
            "gamma": gammas.normalized().tolist(),
            "gamma_standard_errors": gammas.standard_errors.tolist(),
            "d1": d1,
            "files": [str(p) for p in files],
        }


class SummaryVerb(Verb):
    name = "summary"
    description = "Sufficient summary data: active coordinates against model output"
    parameters = {"method": "gas | as", "k": "1 or 2", "n": "int"}

    def execute(self, **params):
        model = self.model(params)
        seed = int(params["seed"])
        master = RngStream(seed)
        method = str(params.get("method", "gas")).lower()
        if method == "gas":
            cfg = GasConfig(M1=int(params.get("M1", 1000)), M2=int(params.get("M2", 10)), seed=seed)
            decomp = gas_subspace(model, cfg, master.child(0))
        elif method == "as":
            _, decomp = as_gradient_matrix(
                model,
                model.distribution,
                int(params.get("M", 10_000)),
                float(params.get("h", 1e-3)),
                master.child(0),
            )
        else:
            raise ConfigurationError(f"Unknown method '{method}'. Available: gas, as")

        summary = sufficient_summary(
            model, decomp, int(params.get("k", 1)), int(params.get("n", 2000)), master.child(1)
        )
        stem = self.stem(params, model.name, method)
        files = emit_summary(summary, self.output_dir(params), stem)
        return {
            "columns": list(summary.columns),
            "rows": len(summary),
            "files": [str(p) for p in files],
        }


class PriceVerb(Verb):
    name = "price"
    description = "MC, PCE, AS_PCE and GAS_PCE estimates with MSE against a reference value"
    default_model = "heston"
    parameters = {"estimators": "list", "reference_n": "int", "K": "int", "N": "int"}

    def configs(self, params, mapping):
        fields = {k: params[k] for k in CONFIG_FIELDS if params.get(k) is not None}
        names = params.get("estimators") or [k.value for k in EstimatorKind]
        if isinstance(names, str):
            names = [n.strip() for n in names.split(",") if n.strip()]
        configs = [
            ExperimentConfig(
                model=mapping,
                estimator=name,
                master_seed=int(params["seed"]),
                output_dir=params.get("output_dir"),
                **fields,
            )
            for name in names
        ]
        by_kind = {c.estimator: c for c in configs}
        if EstimatorKind.GAS_PCE in by_kind and EstimatorKind.AS_PCE in by_kind:
            validate_budget(by_kind[EstimatorKind.GAS_PCE], by_kind[EstimatorKind.AS_PCE])
        return configs

    def execute(self, **params):
        mapping = model_mapping(params, self.default_model)
        model = model_from_config(mapping)
        configs = self.configs(params, mapping)
        workers = int(params.get("workers", 1))

        reference, reference_error = params.get("reference"), None
        if reference is None:
            reference, reference_error = reference_value(
                model,
                int(params.get("reference_n", 1_000_000)),
                RngStream(int(params["seed"])).child(2),
            )

        summary, files = {}, []
        for cfg in configs:
            result = run_estimator(cfg, model, float(reference), reference_error, workers)
            stem = self.stem(params, model.name, cfg.estimator.value)
            files += emit_estimator_result(result, self.output_dir(params), stem)
            summary[cfg.estimator.value] = {
                "mean": float(np.mean(result.successful)) if result.successful.size else None,
                "mse": result.mse,
                "efficiency": result.efficiency,
                "d1": result.d1,
                "failures": len(result.failures),
            }
        return {
            "reference": float(reference),
            "reference_error": reference_error,
            "results": summary,
            "files": [str(p) for p in files],
        }


class HeatmapVerb(Verb):
    name = "heatmap"
    description = "GAS_PCE over AS_PCE MSE and efficiency ratios on a (sigma_v, rho) grid"
    default_model = "heston"
    parameters = {"sigma_values": "list", "rho_values": "list", "reference_n": "int"}

    def execute(self, **params):
        mapping = {**HEATMAP_HESTON, **model_mapping(params, self.default_model)}
        fields = {k: params[k] for k in CONFIG_FIELDS if params.get(k) is not None}
        fields.setdefault("M1", 1000)
        fields.setdefault("M2", 10)
        fields.setdefault("d1", 1)
        base = ExperimentConfig(
            model=mapping,
            estimator=EstimatorKind.GAS_PCE,
            master_seed=int(params["seed"]),
            output_dir=params.get("output_dir"),
            **fields,
        )
        grid = heatmap_sweep(
            base,
            _floats(params.get("sigma_values") or HEATMAP_SIGMAS),
            _floats(params.get("rho_values") or HEATMAP_RHOS),
            reference_n=int(params.get("reference_n", 1_000_000)),
            workers=int(params.get("workers", 1)),
        )
        files = emit_heatmap(grid, self.output_dir(params), self.stem(params, "heston"))
        finite = grid.mse_ratio[np.isfinite(grid.mse_ratio)]
        return {
            "cells": int(grid.mse_ratio.size),
            "missing": int(grid.mse_ratio.size - finite.size),
            "gas_better": int(np.sum(finite < 1.0)),
            "files": [str(p) for p in files],
        }


class NoiseStudyVerb(Verb):
    name = "noise-study"
    description = "AS and GAS spectra and eigenvectors under growing output noise"
    parameters = {"sigma_values": "list", "h_values": "list", "splits": "list of [M1, M2]"}

    def execute(self, **params):
        model = self.model(params)
        if not isinstance(model, QuadraticNoiseModel):
            raise ConfigurationError(f"noise-study needs the quadratic model, got '{model.name}'")
        report = noise_study(
            model,
            int(params["seed"]),
            sigma_values=_floats(params.get("sigma_values") or NOISE_SIGMAS),
            h_values=_floats(params.get("h_values") or NOISE_INCREMENTS),
            splits=_pairs(params.get("splits") or NOISE_SPLITS),
            as_samples=int(params.get("as_samples", 10_000)),
            gamma_M1=int(params.get("gamma_M1", 10_000)),
            gamma_M2=int(params.get("gamma_M2", 10)),
            reference_samples=int(params.get("reference_samples", 100_000)),
            companion_sequence=params.get("companion_sequence", "restart"),
        )
        output_dir, stem = self.output_dir(params), self.stem(params, model.name)
        files = [write_json(output_dir / f"{stem}_reference.json", report["reference"])]
        files += emit_records(
            report["rows"], output_dir, stem, ["method", "sigma", "h", "M1", "M2", "cosine"]
        )
        return {"rows": len(report["rows"]), "files": [str(p) for p in files]}


class EbolaVerb(Verb):
    name = "ebola"
    description = "AS and GAS normalized spectra and first eigenvectors for the Ebola R0 model"
    parameters = {"seeds": "list", "as_samples": "int", "h": "float", "M1": "int", "M2": "int"}

    def execute(self, **params):
        seed = int(params["seed"])
        seeds = [int(s) for s in params.get("seeds") or range(seed, seed + 5)]
        rows = ebola_study(
            seeds,
            as_samples=int(params.get("as_samples", 10_000)),
            h=float(params.get("h", 1e-3)),
            M1=int(params.get("M1", 1000)),
            M2=int(params.get("M2", 10)),
            companion_sequence=params.get("companion_sequence", "restart"),
        )
        columns = ["seed", "method", "d1"]
        files = emit_records(rows, self.output_dir(params), self.stem(params), columns)
        return {"rows": rows, "files": [str(p) for p in files]}


class RidgeVerb(Verb):
    name = "ridge"
    description = "Cosine between the first GAS eigenvector and the ridge direction"
    parameters = {"dimensions": "list", "splits": "list of [M1, M2]"}

    def execute(self, **params):
        rows = ridge_study(
            dimensions=[int(d) for d in params.get("dimensions") or (10, 20)],
            splits=_pairs(params.get("splits") or RIDGE_SPLITS),
            seed=int(params["seed"]),
            companion_sequence=params.get("companion_sequence", "restart"),
        )
        files = emit_records(
            rows, self.output_dir(params), self.stem(params), ["dimension", "M1", "M2", "cosine"]
        )
        return {"cosines": [row["cosine"] for row in rows], "files": [str(p) for p in files]}


class HestonSpectrumVerb(Verb):
    name = "heston-spectrum"
    description = "AS eigenvalues against GAS eigenvalues and Gamma for the Asian option"
    parameters = {"as_samples": "int", "h": "float", "M1": "int", "M2": "int"}

    def execute(self, **params):
        mapping = model_mapping(params, "heston")
        mapping.pop("model")
        report = heston_spectrum_study(
            HestonConfig(**mapping),
            seed=int(params["seed"]),
            as_samples=int(params.get("as_samples", 10_000)),
            h=float(params.get("h", 0.1)),
            M1=int(params.get("M1", 10_000)),
            M2=int(params.get("M2", 10)),
            companion_sequence=params.get("companion_sequence", "restart"),
        )
        path = write_json(self.output_dir(params) / f"{self.stem(params, 'heston')}.json", report)
        return {**report, "files": [str(path)]}


class SobolIdxVerb(Verb):
    name = "sobol-idx"
    description = "Upper Sobol' indices, checked against the undivided-difference matrix diagonal"
    parameters = {"M": "int"}

    def execute(self, **params):
        model = self.model(params)
        seed = int(params["seed"])
        M = int(params.get("M", 100_000))
        master = RngStream(seed)
        direct = upper_sobol_indices(model, model.distribution, M, master.child(0))

        cfg = GasConfig(M1=M, M2=1, seed=seed)
        bhat = assemble_bhat(model, model.distribution, cfg, master.child(1), divided=False)
        from_bhat = sobol_indices_from_bhat(bhat, direct.variance)
        z_scores = np.abs(from_bhat - direct.indices) / np.maximum(direct.standard_errors, 1e-300)

        data = {
            **direct.to_dict(),
            "from_difference_matrix": from_bhat.tolist(),
            "z_scores": z_scores.tolist(),
        }
        path = write_json(self.output_dir(params) / f"{self.stem(params, model.name)}.json", data)
        return {**data, "files": [str(path)]}


class DescribeVerb(Verb):
    name = "describe"
    description = "Describe a catalog model and its parameters"
    requires_seed = False

    def execute(self, **params):
        mapping = model_mapping(params, self.default_model)
        model_id = mapping.pop("model")
        return describe_model(model_id, mapping)


class PceDumpVerb(Verb):
    name = "pce-dump"
    description = "Print the terms of a serialized polynomial chaos expansion"
    requires_seed = False
    parameters = {"file": "path"}

    def execute(self, **params):
        path = params.get("file")
        if not path:
            raise ConfigurationError("File parameter is required")
        model = PceModel.from_dict(read_json(path))
        return {
            "basis": model.basis.value,
            "dim": model.dim,
            "degree": model.degree,
            "mean": model.mean(),
            "variance": model.variance(),
            "terms": model.describe_terms(),
        }


BUILT_IN_VERBS = (
    EigVerb,
    GammaVerb,
    SummaryVerb,
    PriceVerb,
    HeatmapVerb,
    NoiseStudyVerb,
    EbolaVerb,
    RidgeVerb,
    HestonSpectrumVerb,
    SobolIdxVerb,
    DescribeVerb,
    PceDumpVerb,
)
