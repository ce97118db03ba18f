import logging

from ..errors import ConfigurationError
from ..registry import Registry
from .ebola import EbolaModel
from .heston import HestonModel
from .quadratic import QuadraticNoiseModel
from .ridge import RidgeModel

logger = logging.getLogger(__name__)

MODELS = Registry(kind="model")
MODELS.register("quadratic", QuadraticNoiseModel)
MODELS.register("heston", HestonModel)
MODELS.register("ridge", RidgeModel)
MODELS.register("ebola", EbolaModel)


def model_from_config(mapping):
    """Build a model from a ``{"model": id, **parameters}`` mapping."""
    params = dict(mapping or {})
    model_id = params.pop("model", None)
    if not model_id:
        raise ConfigurationError("Model configuration needs a 'model' entry")

    model_cls = MODELS.get(model_id)
    if model_cls is None:
        raise ConfigurationError(
            f"Unknown model '{model_id}'. Available: {', '.join(MODELS.names())}"
        )
    try:
        model = model_cls.from_config(params)
    except TypeError as e:
        raise ConfigurationError(f"Invalid parameters for model '{model_id}': {e}") from e
    logger.info(f"Built model '{model.name}' with dimension {model.dimension}")
    return model


def describe_model(model_id, params=None):
    """Description of a catalog model, including its default parameters."""
    model = model_from_config({"model": model_id, **(params or {})})
    info = model.describe()
    if isinstance(model, EbolaModel):
        info["ranges"] = [
            {"parameter": name, "lower": low, "upper": high}
            for name, low, high in model.range_table()
        ]
    return info
