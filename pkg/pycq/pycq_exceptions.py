class PycqError(Exception):
    pass


class BudgetError(PycqError):
    ''' Raised instead of silently approximating when a request would exceed its budget.

    :param str message: what was refused and why
    :param int lower: tightest lower bound established before refusing
    :param upper: tightest upper bound established before refusing (None if unknown)
    :param int required: number of subsets (or syndromes) the request would have needed
    '''
    def __init__(self, message, lower=None, upper=None, required=None):
        super().__init__(message)
        self.lower = lower
        self.upper = upper
        self.required = required

    @property
    def bracket(self):
        return (self.lower, self.upper)


class WitnessError(PycqError):
    ''' A construction contradicted the claim it is supposed to reproduce. '''
    pass
