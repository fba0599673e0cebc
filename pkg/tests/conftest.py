from hypothesis import settings

settings.register_profile("folkit", deadline=None)
settings.load_profile("folkit")
