# -*- coding: utf-8 -*-
# Please don't import anything in this file to avoid issues when it is imported in setup.py

__version__ = '0.1.0'

CMD_NAME = 'zfeedback'  # Lower case command and module name
APP_NAME = 'ZFeedback'  # Application name in texts meant to be human readable
APP_URL = 'https://github.com/zfeedback/zfeedback'
