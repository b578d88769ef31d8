from typing import Any


class Policy:
    """Class that establishes a default, interchangeable rule selected by name"""

    name: str = ''

    def execute(self, *args, **kwargs) -> Any:
        """Implementation of the policy"""

        pass
