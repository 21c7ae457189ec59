# -*- coding: utf-8 -*-
"""
Created on Sat Oct 17 18:47:02 2026

Entry point of the ccbound tool.
"""


import sys

import cli


class ccbound:

    # Exit code of the last run (see cli.exitCodes)
    status = 0

    def __init__(self, argv=None):
        self.status = cli.main(argv)


if __name__ == '__main__':
    ccboundObj = ccbound(sys.argv[1:])
    sys.exit(ccboundObj.status)
