from hypothesis import settings

settings.register_profile("fracml", deadline=None)
settings.load_profile("fracml")
