class Registry:
    """Name -> object store with case-insensitive lookup.

    Used for the model catalog and for the experiment verbs.
    """

    def __init__(self, kind="entry"):
        self.kind = kind
        self.entries = {}
        self.lowercase_map = {}  # Maps lowercase names to actual names

    def register(self, name, entry=None):
        lowercase_name = name.lower()
        if lowercase_name in self.lowercase_map:
            raise ValueError(
                f"{self.kind.capitalize()} '{name}' is already registered "
                f"(as '{self.lowercase_map[lowercase_name]}')."
            )

        self.entries[name] = entry
        self.lowercase_map[lowercase_name] = name

    def unregister(self, name):
        lowercase_name = name.lower()
        if lowercase_name in self.lowercase_map:
            actual_name = self.lowercase_map[lowercase_name]
            self.entries.pop(actual_name, None)
            self.lowercase_map.pop(lowercase_name, None)
        else:
            self.entries.pop(name, None)

    def names(self):
        return list(self.entries.keys())

    def get(self, name):
        if name in self.entries:
            return self.entries[name]

        lowercase_name = name.lower()
        if lowercase_name in self.lowercase_map:
            return self.entries[self.lowercase_map[lowercase_name]]

        return None

    def __contains__(self, name):
        return name in self.entries or name.lower() in self.lowercase_map

    def __len__(self):
        return len(self.entries)
