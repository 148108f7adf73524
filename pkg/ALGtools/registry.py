from __future__ import annotations

from typing import TYPE_CHECKING, Iterator

from ALGtools import exceptions


if TYPE_CHECKING:
    from ALGtools.claims import Claim


class ClaimRegistry:
    """
    A table of verification claims keyed by their stable id.

    Parameters
    ----------
    name : str
        The registry's name, used in error messages
    initial : dict[str, Claim], optional
        The initial contents of the table
    """
    def __init__(self, name: str, initial: dict[str, Claim] = None) -> None:
        self.name = name
        self.__claims = dict(initial or {})

    def get(self, claim_id: str) -> Claim:
        """
        Retrieve a claim from the registry.

        Raises
        ------
        UnknownClaim
            When no claim is registered under the id
        """
        try:
            return self.__claims[claim_id]
        except KeyError:
            raise exceptions.UnknownClaim(f"unknown claim '{claim_id}' in {self.name}; "
                                          f"known claims: {', '.join(self.ids())}") from None

    def add(self, claim: Claim, overwrite=False) -> Claim:
        """
        Register a claim under its id.

        Parameters
        ----------
        claim : Claim
            The claim itself
        overwrite : bool, default False
            If True, a pre-existing claim with the same id is replaced

        Raises
        ------
        DuplicateClaim
            If the id is already in use and overwrite is set to False
        """
        if claim.id in self.__claims and not overwrite:
            raise exceptions.DuplicateClaim(f"claim {claim.id} already exists in {self.name}")
        self.__claims[claim.id] = claim
        return claim

    def ids(self) -> list[str]:
        return list(self.__claims)

    def selected(self, claim_id: str, include_slow: bool = False) -> list[Claim]:
        """
        The claims run for `claim_id`: a single claim, or for 'all' every
        registered claim in registration order (slow ones only on request)
        """
        if claim_id == 'all':
            return [claim for claim in self if include_slow or not claim.slow]
        return [self.get(claim_id)]

    def __iter__(self) -> Iterator[Claim]:
        return iter(self.__claims.values())

    def __len__(self) -> int:
        return len(self.__claims)

    def __contains__(self, claim_id: str) -> bool:
        return claim_id in self.__claims
