# -*- coding: utf-8 -*-
"""
Created on Sat Oct 17 16:52:30 2026

String helpers for command-line values. Each returns the parsed value(s)
followed by an error code (0 ok, 1 parse failure).
"""

import decimal
from fractions import Fraction


# Function that extracts range from supplied string ("2-32" or "7")
def getRangefromStr(rangeStr):

    ind = rangeStr.find('-')
    # Extract start and end
    try:
        if ind < 0:
            start = end = int(rangeStr)
        else:
            start = int(rangeStr[0:ind])
            end = int(rangeStr[ind+1:])
        errorCode = 0
    except ValueError:
        start = 0
        end = 0
        errorCode = 1

    # Check that end is not smaller than start
    if end < start:
        errorCode = 1

    return(start, end, errorCode)


# Function that extracts an exact rational from "p/q", an integer or a decimal ("0.5")
def getRationalfromStr(valueStr):

    valueStr = valueStr.strip()
    try:
        if '/' in valueStr:
            num, den = valueStr.split('/')
            value = Fraction(int(num), int(den))
        else:
            value = Fraction(decimal.Decimal(valueStr))
        errorCode = 0
    except (ValueError, ZeroDivisionError, OverflowError, decimal.InvalidOperation):
        value = Fraction(0)
        errorCode = 1

    # Negative values are left to the caller
    return(value, errorCode)


# Function that extracts a permutation of 1..K from "2,1,3"
def getPermfromStr(permStr, numUsers):

    try:
        perm = [int(p) for p in permStr.split(',')]
        errorCode = 0
    except ValueError:
        perm = []
        errorCode = 1

    if sorted(perm) != list(range(1, numUsers + 1)):
        errorCode = 1

    return(perm, errorCode)
