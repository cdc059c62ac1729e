"""Initialize utils package: parser, configuration, logging"""
