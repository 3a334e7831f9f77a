from hypothesis import settings

settings.register_profile("oakern", deadline=None)
settings.load_profile("oakern")
