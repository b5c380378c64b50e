# API app initialization