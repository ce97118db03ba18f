import logging
from typing import Any, Dict, List, Optional

from ..registry import Registry
from ..settings import load_settings, load_verb_defaults
from .verbs import BUILT_IN_VERBS

logger = logging.getLogger(__name__)


class ExperimentRunner:
    def __init__(self, settings=None):
        self.verbs_registry = Registry(kind="verb")
        self.settings = settings
        self.is_running = False
        self.verb_instances = {}

    def start(self):
        logger.info("Starting experiment runner...")
        if self.settings is None:
            self.settings = load_settings()
        self.is_running = True
        self._initialize_built_in_verbs()

    def stop(self):
        logger.info("Stopping experiment runner...")
        self.is_running = False

    def register_verb(self, name, verb_instance=None):
        """Register a verb by name, with optional instance"""
        if verb_instance is None:
            self.verbs_registry.register(name)
            return
        self.verbs_registry.register(name, verb_instance.as_verb_info())
        self.verb_instances[name] = verb_instance

    def unregister_verb(self, name):
        self.verbs_registry.unregister(name)
        for key in [k for k in self.verb_instances if k.lower() == name.lower()]:
            del self.verb_instances[key]

    def get_registered_verbs(self) -> List[str]:
        return self.verbs_registry.names()

    def get_verb(self, verb_name):
        return self.verbs_registry.get(verb_name)

    def get_verb_instance(self, verb_name):
        if verb_name in self.verb_instances:
            return self.verb_instances[verb_name]

        verb_name_lower = verb_name.lower()
        for name, instance in self.verb_instances.items():
            if name.lower() == verb_name_lower:
                return instance

        return None

    def list_verbs(self) -> Dict[str, Any]:
        verbs_list = []
        try:
            for name in self.get_registered_verbs():
                meta = self.get_verb(name)
                if meta is not None:
                    verbs_list.append(
                        {
                            "name": getattr(meta, "name", name),
                            "description": getattr(meta, "description", ""),
                            "version": getattr(meta, "version", ""),
                        }
                    )
                else:
                    verbs_list.append({"name": name})
        except Exception as e:
            logger.exception(f"Failed to list verbs: {str(e)}")
            return {"status": "error", "message": f"Failed to list verbs: {str(e)}"}

        return {"status": "success", "verbs": verbs_list}

    def resolve_params(self, verb_name: str, params: Optional[Dict[str, Any]]) -> Dict[str, Any]:
        """Settings < YAML verb defaults < explicit parameters (None values are ignored)."""
        settings = self.settings or {}
        merged = {
            "output_dir": settings.get("output_dir", "results"),
            "workers": settings.get("workers", 1),
        }
        defaults = load_verb_defaults(verb_name)
        explicit = {k: v for k, v in (params or {}).items() if v is not None}
        merged.update(defaults)
        merged.update(explicit)
        if defaults.get("model_params") and explicit.get("model_params"):
            merged["model_params"] = {**defaults["model_params"], **explicit["model_params"]}
        return merged

    def execute(self, verb_name: str, params: Optional[Dict[str, Any]] = None) -> Dict[str, Any]:
        """
        Execute a verb with the given parameters.

        Args:
            verb_name: Name of the verb to execute
            params: Parameters passed to the verb; YAML defaults fill the gaps

        Returns:
            Dict with ``status`` and either ``data`` or ``message``
        """
        verb = self.get_verb_instance(verb_name)
        if not verb:
            return {"status": "error", "message": f"Verb '{verb_name}' not found"}

        try:
            resolved = self.resolve_params(verb.name, params)
            if verb.requires_seed and resolved.get("seed") is None:
                return {"status": "error", "message": f"Verb '{verb.name}' requires --seed"}

            logger.info(f"Running verb {verb.name}")
            data = verb.execute(**resolved)
            return {"status": "success", "data": data}
        except Exception as e:
            logger.exception(f"Error executing verb {verb.name}: {str(e)}")
            return {"status": "error", "message": f"Error executing verb: {str(e)}"}

    def _initialize_built_in_verbs(self):
        """Initialize and register built-in verbs"""
        for verb_cls in BUILT_IN_VERBS:
            verb = verb_cls()
            try:
                self.register_verb(verb.name, verb)
                logger.debug(f"Registered built-in verb: {verb.name}")
            except ValueError:
                logger.debug(f"Verb already registered, skipping: {verb.name}")
