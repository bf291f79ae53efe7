class PartlabError(Exception):
    pass


class RejectedInputError(PartlabError, ValueError):
    pass


class DomainError(PartlabError, ValueError):
    """A map was applied outside the set it is defined on."""


class ResourceBudgetError(PartlabError):
    pass
